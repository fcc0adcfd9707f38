#include "mgsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mgsim/kernels.hpp"

namespace mgsim {

namespace {

const double* raw(const SpectralField& s) {
  return reinterpret_cast<const double*>(s.coefficients().data());
}

std::vector<double> mode_weights(const Grid& g, double (*w)(int n, int m)) {
  std::vector<double> out(g.coef_count());
  for (int n = -g.n_modes_x(); n <= g.n_modes_x(); ++n) {
    for (int m = 1; m <= g.n_modes_y(); ++m) out[g.index(n, m)] = w(n, m);
  }
  return out;
}

// u, grad u and Hessian at a point from the coefficient double sum.
struct LocalJet {
  double f, fx, fy, fxx, fxy, fyy;
};

LocalJet local_jet(const SpectralField& u, double x, double y) {
  LocalJet j{0, 0, 0, 0, 0, 0};
  const int nn = u.n_modes_x();
  const int mm = u.n_modes_y();
  std::vector<double> s(mm + 1), c(mm + 1);
  for (int m = 1; m <= mm; ++m) {
    s[m] = std::sin(m * kPi * y);
    c[m] = std::cos(m * kPi * y);
  }
  for (int n = 0; n <= nn; ++n) {
    const double factor = n == 0 ? 1.0 : 2.0;
    const cplx e = std::polar(1.0, n * x);
    for (int m = 1; m <= mm; ++m) {
      const cplx a = factor * u(n, m) * e;  // Re(a) = contribution of +-n
      const double k = m * kPi;
      const double re = a.real();
      const double im = a.imag();
      j.f += re * s[m];
      j.fx += -n * im * s[m];
      j.fy += re * k * c[m];
      j.fxx += -static_cast<double>(n) * n * re * s[m];
      j.fxy += -n * im * k * c[m];
      j.fyy += -k * k * re * s[m];
    }
  }
  return j;
}

// Newton ascent (sign = +1) or descent (sign = -1) from a grid extremum.
Extremum polish(const SpectralField& u, Extremum start, double sign) {
  Extremum best = start;
  if (start.y <= 0.0 || start.y >= 1.0) return best;
  double x = start.x;
  double y = start.y;
  for (int it = 0; it < 30; ++it) {
    const LocalJet j = local_jet(u, x, y);
    const double gx = sign * j.fx;
    const double gy = sign * j.fy;
    const double hxx = sign * j.fxx;
    const double hxy = sign * j.fxy;
    const double hyy = sign * j.fyy;
    const double det = hxx * hyy - hxy * hxy;
    if (!(hxx < 0.0 && det > 0.0)) break;
    const double dx = -(hyy * gx - hxy * gy) / det;
    const double dy = -(-hxy * gx + hxx * gy) / det;
    const double nx = x + dx;
    const double ny = y + dy;
    if (!(ny > 0.0 && ny < 1.0)) break;
    const double value = local_jet(u, nx, ny).f;
    if (!(sign * value >= sign * best.value)) break;
    x = nx;
    y = ny;
    best = Extremum{value, std::fmod(x + 4.0 * kPi, 2.0 * kPi), y};
    if (std::abs(dx) + std::abs(dy) < 1e-15) break;
  }
  return best;
}

}  // namespace

double l2_norm(const SpectralField& u) {
  const auto c = u.coefficients();
  double acc = 0.0;
  for (const cplx& v : c) acc += std::norm(v);
  return std::sqrt(kPi * acc);
}

double h1_seminorm(const SpectralField& u) {
  double acc = 0.0;
  for (int n = -u.n_modes_x(); n <= u.n_modes_x(); ++n) {
    for (int m = 1; m <= u.n_modes_y(); ++m) {
      acc += (static_cast<double>(n) * n + m * m * kPi * kPi) * std::norm(u(n, m));
    }
  }
  return std::sqrt(kPi * acc);
}

double mean_value(const SpectralField& u) {
  double acc = 0.0;
  for (int m = 1; m <= u.n_modes_y(); m += 2) acc += 2.0 * u(0, m).real() / (m * kPi);
  return acc;
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  const auto a = f.coefficients();
  const auto b = g.coefficients();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::real(a[i] * std::conj(b[i]));
  return kPi * acc;
}

double wiener_norm(const SpectralField& u, int s) {
  std::vector<double> w;
  switch (s) {
    case 0:
      w = mode_weights(u.grid(), [](int, int) { return 2.0; });
      break;
    case 1:
      w = mode_weights(u.grid(), [](int n, int m) { return std::abs(n) + static_cast<double>(m); });
      break;
    case 2:
      w = mode_weights(u.grid(),
                       [](int n, int m) { return static_cast<double>(n) * n + m * m; });
      break;
    default:
      throw std::invalid_argument("wiener_norm: s must be 0, 1 or 2");
  }
  return kernels::active().weighted_abs(w.data(), raw(u), w.size());
}

double tu_inner(const SpectralField& u, OperatorWorkspace& ws) {
  return inner_product(spectral_T(u, ws), u);
}

ExtremaFinder::ExtremaFinder(const Grid& grid, int refine)
    : fine_(grid.with_oversample(refine)), transform_(fine_) {}

Extrema ExtremaFinder::find(const SpectralField& u) {
  SpectralField lifted(fine_);
  std::copy(u.coefficients().begin(), u.coefficients().end(), lifted.coefficients().begin());
  const PhysicalField p = transform_.inverse(lifted, YNodes::Closed);
  const auto values = p.values();
  const kernels::MinMax mm = kernels::active().minmax(values.data(), values.size());
  auto at = [&](std::size_t idx, double v) {
    const int row = static_cast<int>(idx / p.nx());
    const int col = static_cast<int>(idx % p.nx());
    return Extremum{v, p.x_of_col(col), p.y_of_row(row)};
  };
  Extrema out;
  out.max = polish(u, at(mm.argmax, mm.max), 1.0);
  out.min = polish(u, at(mm.argmin, mm.min), -1.0);
  return out;
}

double energy_residual(const DiagnosticsRecord& r, double d_half_l2sq, const ModelParams& p) {
  return std::abs(d_half_l2sq + p.mu * r.h1_dot * r.h1_dot - p.alpha * r.l2 * r.l2 +
                  p.beta * r.tu_u);
}

double wiener_residual(const DiagnosticsRecord& r, double d_wiener0, const ModelParams& p) {
  return std::max(0.0, d_wiener0 - 2.0 * r.wiener0 * r.wiener2 + p.mu * r.wiener2);
}

DiagnosticsContext::DiagnosticsContext(const Grid& grid, const ModelParams& params, int sup_refine)
    : params_(params), ws_(grid), extrema_(grid, sup_refine) {}

DiagnosticsRecord DiagnosticsContext::compute(const SolverState& state,
                                              const std::optional<DiagnosticsRecord>& prev) {
  const SpectralField& u = state.u;
  DiagnosticsRecord r;
  r.t = state.t;
  r.l2 = l2_norm(u);
  r.h1_dot = h1_seminorm(u);
  const Extrema e = extrema_.find(u);
  r.max_u = e.max.value;
  r.max_x = e.max.x;
  r.max_y = e.max.y;
  r.min_u = e.min.value;
  r.min_x = e.min.x;
  r.min_y = e.min.y;
  r.linf = std::max(std::abs(r.max_u), std::abs(r.min_u));
  r.mean = mean_value(u);
  r.wiener0 = wiener_norm(u, 0);
  r.wiener1 = wiener_norm(u, 1);
  r.wiener2 = wiener_norm(u, 2);
  r.tu_u = params_.beta != 0.0 ? tu_inner(u, ws_) : 0.0;
  if (prev && state.t > prev->t) {
    const double h = state.t - prev->t;
    const double d_energy = 0.5 * (r.l2 * r.l2 - prev->l2 * prev->l2) / h;
    r.energy_residual = energy_residual(r, d_energy, params_);
    r.wiener_ineq_residual = wiener_residual(r, (r.wiener0 - prev->wiener0) / h, params_);
  }
  return r;
}

DiagnosticsRecord compute_record(const SolverState& state, const ModelParams& params,
                                 const std::optional<DiagnosticsRecord>& prev) {
  DiagnosticsContext ctx(state.u.grid(), params);
  return ctx.compute(state, prev);
}

std::vector<double> derivative_weights(double z, std::span<const double> x) {
  // Fornberg (1988), derivative orders 0 and 1 only.
  const std::size_t n = x.size();
  std::vector<double> w0(n, 0.0), w1(n, 0.0);
  if (n == 0) return w1;
  double c1 = 1.0;
  double c4 = x[0] - z;
  w0[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        w1[i] = c1 * (w0[i - 1] - c5 * w1[i - 1]) / c2;
        w0[i] = -c1 * c5 * w0[i - 1] / c2;
      }
      w1[j] = (c4 * w1[j] - w0[j]) / c3;
      w0[j] = c4 * w0[j] / c3;
    }
    c1 = c2;
  }
  return w1;
}

void TrajectoryLog::append(const DiagnosticsRecord& r) {
  if (!records.empty() && !(r.t > records.back().t)) {
    throw std::invalid_argument("TrajectoryLog: record times must be strictly increasing");
  }
  records.push_back(r);
}

void TrajectoryLog::finalize(int stencil) {
  const std::size_t n = records.size();
  if (n < 2) {
    for (auto& r : records) {
      r.energy_residual = 0.0;
      r.wiener_ineq_residual = 0.0;
    }
    return;
  }
  const std::size_t width = std::min<std::size_t>(std::max(stencil, 2), n);
  std::vector<double> times(width);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= width / 2 ? i - width / 2 : 0;
    lo = std::min(lo, n - width);
    for (std::size_t k = 0; k < width; ++k) times[k] = records[lo + k].t;
    const std::vector<double> w = derivative_weights(records[i].t, times);
    double d_energy = 0.0;
    double d_wiener = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      const DiagnosticsRecord& s = records[lo + k];
      d_energy += w[k] * 0.5 * s.l2 * s.l2;
      d_wiener += w[k] * s.wiener0;
    }
    records[i].energy_residual = energy_residual(records[i], d_energy, params);
    records[i].wiener_ineq_residual = wiener_residual(records[i], d_wiener, params);
  }
}

}  // namespace mgsim
