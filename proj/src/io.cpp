#include "mgsim/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mgsim {

namespace {

constexpr std::array<const char*, 12> kColumns{
    "t",       "l2",      "h1dot",   "linf",           "max_u",
    "min_u",   "mean",    "wiener0", "wiener1",        "wiener2",
    "energy_residual", "wiener_ineq_residual"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return f;
}

}  // namespace

void write_diagnostics_csv(const TrajectoryLog& log, std::ostream& os) {
  if (log.records.empty()) throw std::invalid_argument("write_diagnostics_csv: empty log");
  os << kDiagnosticsHeader << '\n';
  for (const auto& r : log.records) {
    const std::array<double, 12> v{r.t,    r.l2,      r.h1_dot,  r.linf,    r.max_u,
                                   r.min_u, r.mean,   r.wiener0, r.wiener1, r.wiener2,
                                   r.energy_residual, r.wiener_ineq_residual};
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << fmt(v[i]);
    os << '\n';
  }
  if (!os) throw std::runtime_error("write_diagnostics_csv: write failed");
}

void write_diagnostics_csv(const TrajectoryLog& log, const std::filesystem::path& path) {
  std::ofstream f = open_out(path);
  write_diagnostics_csv(log, f);
  f.close();
  if (!f) throw std::runtime_error("write_diagnostics_csv: write to '" + path.string() + "' failed");
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("diagnostics csv: missing header");
  const auto header = split(line);
  std::array<int, 12> col{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    col[c] = -1;
    for (std::size_t h = 0; h < header.size(); ++h) {
      if (header[h] == kColumns[c]) col[c] = static_cast<int>(h);
    }
    if (col[c] < 0) throw std::runtime_error(std::string("diagnostics csv: missing column ") + kColumns[c]);
  }
  std::vector<DiagnosticsRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    std::array<double, 12> v{};
    for (std::size_t c = 0; c < kColumns.size(); ++c) {
      const auto idx = static_cast<std::size_t>(col[c]);
      if (idx >= cells.size()) throw std::runtime_error("diagnostics csv: short row");
      const std::string& s = cells[idx];
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v[c]);
      if (res.ec != std::errc()) {
        throw std::runtime_error(std::string("diagnostics csv: bad value in column ") + kColumns[c]);
      }
    }
    DiagnosticsRecord r;
    r.t = v[0];
    r.l2 = v[1];
    r.h1_dot = v[2];
    r.linf = v[3];
    r.max_u = v[4];
    r.min_u = v[5];
    r.mean = v[6];
    r.wiener0 = v[7];
    r.wiener1 = v[8];
    r.wiener2 = v[9];
    r.energy_residual = v[10];
    r.wiener_ineq_residual = v[11];
    out.push_back(r);
  }
  return out;
}

void write_report(const std::vector<VerificationReport>& reports, const std::filesystem::path& stem) {
  std::filesystem::path txt = stem;
  txt += ".txt";
  std::filesystem::path json = stem;
  json += ".json";
  std::ofstream t = open_out(txt);
  for (const auto& r : reports) t << r.to_text() << '\n';
  std::ofstream j = open_out(json);
  j << "[";
  for (std::size_t i = 0; i < reports.size(); ++i) j << (i ? ",\n" : "\n") << reports[i].to_json();
  j << "\n]\n";
  if (!t || !j) throw std::runtime_error("write_report: write failed for '" + stem.string() + "'");
}

void write_spectrum_csv(const SpectralField& u, std::ostream& os) {
  os << "n,m,re,im,abs\n";
  for (int n = 0; n <= u.n_modes_x(); ++n) {
    for (int m = 1; m <= u.n_modes_y(); ++m) {
      const cplx c = u(n, m);
      os << n << ',' << m << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << ','
         << fmt(std::abs(c)) << '\n';
    }
  }
}

}  // namespace mgsim
