#include "mgsim/verification.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mgsim/parallel.hpp"
#include "mgsim/transform.hpp"

namespace mgsim {

namespace {

ClauseResult clause(std::string name, double value, double bound) {
  ClauseResult c;
  c.name = std::move(name);
  c.value = value;
  c.bound = bound;
  c.margin = bound - value;
  c.status = value <= bound ? ClauseStatus::Pass : ClauseStatus::Fail;
  return c;
}

ClauseResult skipped(std::string name, std::string why) {
  ClauseResult c;
  c.name = std::move(name);
  c.status = ClauseStatus::Skipped;
  c.detail = std::move(why);
  return c;
}

double max_spacing(const TrajectoryLog& log) {
  double h = 0.0;
  for (std::size_t k = 1; k < log.records.size(); ++k) {
    h = std::max(h, log.records[k].t - log.records[k - 1].t);
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Trapezoid weights in y for the closed rows of `f`, times dx.
double integrate_fourth_power(const PhysicalField& f) {
  const Grid& g = f.grid();
  double total = 0.0;
  for (int r = 0; r < f.rows(); ++r) {
    const double w = (r == 0 || r == f.rows() - 1) ? 0.5 : 1.0;
    double row = 0.0;
    for (double v : f.row(r)) row += v * v * v * v;
    total += w * row;
  }
  return total * g.dx() * g.dy();
}

}  // namespace

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string_view to_string(ClauseStatus s) {
  switch (s) {
    case ClauseStatus::Pass:
      return "pass";
    case ClauseStatus::Fail:
      return "fail";
    case ClauseStatus::Skipped:
      return "skipped";
  }
  return "?";
}

bool VerificationReport::passed() const {
  if (inconclusive) return false;
  return std::none_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) {
    return !c.informational && c.status == ClauseStatus::Fail;
  });
}

const ClauseResult* VerificationReport::find(std::string_view name) const {
  for (const auto& c : clauses) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << "== " << title << " ==\n";
  for (const auto& c : clauses) {
    os << "  " << std::left << std::setw(28) << c.name << std::setw(8) << to_string(c.status);
    if (c.status != ClauseStatus::Skipped) {
      os << " value=" << format_double(c.value) << " bound=" << format_double(c.bound)
         << " margin=" << format_double(c.margin);
    }
    if (c.worst_time) os << " worst_t=" << format_double(*c.worst_time);
    if (c.worst_seed) os << " worst_seed=" << *c.worst_seed;
    if (c.informational) os << " (info)";
    if (!c.detail.empty()) os << " [" << c.detail << "]";
    os << "\n";
  }
  if (inconclusive) os << "  INCONCLUSIVE";
  if (!note.empty()) os << "  note: " << note << "\n";
  os << "  result: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["title"] = title;
  j["passed"] = passed();
  j["inconclusive"] = inconclusive;
  if (!note.empty()) j["note"] = note;
  j["clauses"] = nlohmann::json::array();
  for (const auto& c : clauses) {
    nlohmann::json e;
    e["name"] = c.name;
    e["status"] = std::string(to_string(c.status));
    e["pass"] = c.status != ClauseStatus::Fail;
    e["informational"] = c.informational;
    if (c.status != ClauseStatus::Skipped) {
      e["value"] = c.value;
      e["bound"] = c.bound;
      e["margin"] = c.margin;
    }
    if (c.worst_time) e["worst_time"] = *c.worst_time;
    if (c.worst_seed) e["worst_seed"] = *c.worst_seed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    j["clauses"].push_back(std::move(e));
  }
  return j.dump(2);
}

Theorem1Tolerance Theorem1Tolerance::uniform(double tol, const TrajectoryLog& log) {
  Theorem1Tolerance t;
  const DiagnosticsRecord first = log.records.empty() ? DiagnosticsRecord{} : log.records.front();
  const double h = max_spacing(log);
  t.monotone_rate = tol;
  t.linf_slack = tol * first.linf;
  t.mean_rel = tol;
  t.gronwall_rel = tol;
  t.energy_rel = h > 0.0 ? tol / h : tol;
  return t;
}

VerificationReport check_theorem1(const TrajectoryLog& log, const Theorem1Tolerance& tol) {
  VerificationReport rep;
  rep.title = "theorem1";
  const auto& rec = log.records;
  if (rec.empty()) {
    rep.inconclusive = true;
    rep.note = "empty log";
    return rep;
  }
  const DiagnosticsRecord& r0 = rec.front();
  const double u0_l2 = r0.l2;

  // (a) M nonincreasing, m nondecreasing: worst excess over the slack.
  {
    double worst = -std::numeric_limits<double>::infinity();
    double worst_t = r0.t;
    for (std::size_t k = 1; k < rec.size(); ++k) {
      const double slack = tol.monotone_rate * (rec[k].t - rec[k - 1].t);
      const double rise = std::max(rec[k].max_u - rec[k - 1].max_u,
                                   rec[k - 1].min_u - rec[k].min_u) - slack;
      if (rise > worst) {
        worst = rise;
        worst_t = rec[k].t;
      }
    }
    if (rec.size() < 2) worst = 0.0;
    ClauseResult c = clause("a_extrema_monotone", worst, 0.0);
    c.worst_time = worst_t;
    c.detail = "max over k of rise(M, -m) - slack";
    rep.clauses.push_back(c);
  }
  // (b) linf(t) <= linf(0) + slack.
  {
    double worst = r0.linf;
    double worst_t = r0.t;
    for (const auto& r : rec) {
      if (r.linf > worst) {
        worst = r.linf;
        worst_t = r.t;
      }
    }
    ClauseResult c = clause("b_linf_bound", worst, r0.linf + tol.linf_slack);
    c.worst_time = worst_t;
    rep.clauses.push_back(c);
  }
  // (c) |mean| <= mean_rel |u0|.
  {
    double worst = 0.0;
    double worst_t = r0.t;
    for (const auto& r : rec) {
      if (std::abs(r.mean) > worst) {
        worst = std::abs(r.mean);
        worst_t = r.t;
      }
    }
    ClauseResult c = clause("c_mean_zero", worst, tol.mean_rel * u0_l2);
    c.worst_time = worst_t;
    rep.clauses.push_back(c);
  }
  // (d) sup |u|^2 + int |grad u|^2 <= |u0|^2 e^{beta^2 T} (1 + rel).
  {
    double sup = 0.0;
    double integral = 0.0;
    for (std::size_t k = 0; k < rec.size(); ++k) {
      sup = std::max(sup, rec[k].l2 * rec[k].l2);
      if (k > 0) {
        integral += 0.5 * (rec[k].t - rec[k - 1].t) *
                    (rec[k].h1_dot * rec[k].h1_dot + rec[k - 1].h1_dot * rec[k - 1].h1_dot);
      }
    }
    const double horizon = rec.back().t - r0.t;
    const double beta = log.params.beta;
    const double lhs = sup + integral;
    ClauseResult c =
        clause("d_gronwall", lhs, u0_l2 * u0_l2 * std::exp(beta * beta * horizon) *
                                      (1.0 + tol.gronwall_rel));
    c.detail = "bound |u0|^2 exp(beta^2 T)";
    rep.clauses.push_back(c);
    ClauseResult alt = clause("d_gronwall_exp_t", lhs,
                              u0_l2 * u0_l2 * std::exp(horizon) * (1.0 + tol.gronwall_rel));
    alt.informational = true;
    alt.detail = "bound |u0|^2 exp(T)";
    rep.clauses.push_back(alt);
  }
  // (e) energy residual.
  {
    double worst = 0.0;
    double worst_t = r0.t;
    for (const auto& r : rec) {
      if (r.energy_residual > worst) {
        worst = r.energy_residual;
        worst_t = r.t;
      }
    }
    ClauseResult c = clause("e_energy_residual", worst, tol.energy_rel * u0_l2 * u0_l2);
    c.worst_time = worst_t;
    rep.clauses.push_back(c);
  }
  return rep;
}

VerificationReport check_theorem1(const TrajectoryLog& log, double tol) {
  return check_theorem1(log, Theorem1Tolerance::uniform(tol, log));
}

VerificationReport check_theorem2(const TrajectoryLog& log, const Theorem2Tolerance& tol) {
  VerificationReport rep;
  rep.title = "theorem2";
  const auto& rec = log.records;
  if (rec.empty()) {
    rep.inconclusive = true;
    rep.note = "empty log";
    return rep;
  }
  const double mu = log.params.mu;
  const double w0 = rec.front().wiener0;
  const bool small = 2.0 * w0 < mu;
  {
    ClauseResult c = clause("a_smallness", 2.0 * w0, mu);
    if (!small) c.status = ClauseStatus::Fail;
    c.informational = true;
    c.detail = "precondition 2 |u0|_A0 < mu";
    rep.clauses.push_back(c);
  }
  if (small) {
    double worst = 0.0;
    double worst_t = rec.front().t;
    for (std::size_t k = 1; k < rec.size(); ++k) {
      const double rise = rec[k].wiener0 - rec[k - 1].wiener0 -
                          tol.monotone_rate * (rec[k].t - rec[k - 1].t);
      if (k == 1 || rise > worst) {
        worst = rise;
        worst_t = rec[k].t;
      }
    }
    ClauseResult c = clause("b_wiener0_monotone", worst, 0.0);
    c.worst_time = worst_t;
    rep.clauses.push_back(c);

    double integral = 0.0;
    for (std::size_t k = 1; k < rec.size(); ++k) {
      integral += 0.5 * (rec[k].t - rec[k - 1].t) * (rec[k].wiener2 + rec[k - 1].wiener2);
    }
    rep.clauses.push_back(
        clause("c_wiener2_integral", integral, w0 / (mu - 2.0 * w0) * (1.0 + tol.integral_rel)));
  } else {
    rep.clauses.push_back(skipped("b_wiener0_monotone", "precondition a false"));
    rep.clauses.push_back(skipped("c_wiener2_integral", "precondition a false"));
  }
  {
    double worst = 0.0;
    double worst_t = rec.front().t;
    for (const auto& r : rec) {
      if (r.wiener_ineq_residual > worst) {
        worst = r.wiener_ineq_residual;
        worst_t = r.t;
      }
    }
    ClauseResult c = clause("d_wiener_residual", worst, tol.residual);
    c.worst_time = worst_t;
    rep.clauses.push_back(c);
  }
  return rep;
}

VerificationReport check_theorem2(const TrajectoryLog& log, double tol) {
  return check_theorem2(log, Theorem2Tolerance::uniform(tol));
}

SpectralField battery_field(std::uint64_t seed, std::uint64_t index,
                            const BatteryOptions& options) {
  const Grid grid(options.n_modes_x, options.n_modes_y, 4);
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(index)));
  std::uniform_int_distribution<int> n_pick(1, options.n_modes_x);
  std::uniform_int_distribution<int> m_pick(1, options.n_modes_y);
  std::uniform_real_distribution<double> decay_pick(0.0, 3.0);
  std::normal_distribution<double> normal;
  const int n_cut = n_pick(rng);
  const int m_cut = m_pick(rng);
  const double decay = decay_pick(rng);
  SpectralField u(grid);
  for (int n = 0; n <= n_cut; ++n) {
    for (int m = 1; m <= m_cut; ++m) {
      const double scale = std::pow(1.0 + n * n + m * m, -0.5 * decay);
      const double re = normal(rng);
      const double im = normal(rng);
      u(n, m) = scale * cplx(re, n == 0 ? 0.0 : im);
    }
  }
  u.enforce_hermitian();
  // Remove the mean through the (0, 1) coefficient.
  const double mean = mean_value(u);
  u(0, 1) -= cplx(0.5 * kPi * mean, 0.0);
  return u;
}

InequalityRatios inequality_ratios(const SpectralField& u) {
  const Grid& g = u.grid();
  const int nn = g.n_modes_x();
  const int mm = g.n_modes_y();
  InequalityRatios r{};

  // Jensen: |Tu|^2 from the cosine coefficients of Tu, exact.
  ColumnSpectra tcols(nn, mm + 1);
  t_cosine_columns(u, tcols);
  double tu2 = 0.0;
  for (int n = 0; n <= nn; ++n) {
    double col = std::norm(tcols(n, 0));
    for (int j = 1; j <= mm; ++j) col += 0.5 * std::norm(tcols(n, j));
    tu2 += (n == 0 ? 1.0 : 2.0) * 2.0 * kPi * col;
  }
  const double grad = h1_seminorm(u);
  r.jensen = std::sqrt(tu2) / grad;

  // L4 norms of u_x and u_y by trapezoid on a grid fine enough to be exact.
  SpectralTransform tr(g);
  ColumnSpectra ux(nn, mm), uy(nn, mm + 1);
  double uxx2 = 0.0;
  double uyy2 = 0.0;
  for (int n = 0; n <= nn; ++n) {
    for (int m = 1; m <= mm; ++m) {
      const cplx c = u(n, m);
      ux(n, m - 1) = cplx(0.0, n) * c;
      uy(n, m) = (m * kPi) * c;
      const double w = n == 0 ? 1.0 : 2.0;
      uxx2 += w * std::pow(static_cast<double>(n), 4) * std::norm(c);
      uyy2 += w * std::pow(m * kPi, 4) * std::norm(c);
    }
  }
  uxx2 *= kPi;
  uyy2 *= kPi;
  PhysicalField px(g, YNodes::Closed), py(g, YNodes::Closed);
  tr.synthesize(ux, YBasis::Sine, px);
  tr.synthesize(uy, YBasis::Cosine, py);
  const double ux4 = integrate_fourth_power(px);
  const double uy4 = integrate_fourth_power(py);
  ExtremaFinder finder(g, g.oversample());
  const Extrema e = finder.find(u);
  const double sup = std::max(e.max.value, -e.min.value);
  r.interp_x = uxx2 > 0.0 ? std::sqrt(ux4) / (std::sqrt(uxx2) * sup) : 0.0;
  r.interp_y = std::sqrt(uy4) / (std::sqrt(uyy2) * sup);

  const double a0 = wiener_norm(u, 0);
  const double a1 = wiener_norm(u, 1);
  const double a2 = wiener_norm(u, 2);
  r.wiener = a1 * a1 / (a0 * a2);
  return r;
}

VerificationReport check_inequality_battery(int trials, std::uint64_t seed,
                                            const BatteryOptions& options) {
  if (trials < 1) throw std::invalid_argument("battery: trials must be >= 1");
  std::vector<InequalityRatios> ratios(static_cast<std::size_t>(trials));
  parallel_for(ratios.size(), [&](std::size_t i) {
    ratios[i] = inequality_ratios(battery_field(seed, i, options));
  });

  VerificationReport rep;
  rep.title = "inequality_battery";
  struct Family {
    const char* name;
    double constant;
    double InequalityRatios::*field;
  };
  const Family families[] = {
      {"jensen", 1.0, &InequalityRatios::jensen},
      {"interp_x", 3.0, &InequalityRatios::interp_x},
      {"interp_y", 3.0, &InequalityRatios::interp_y},
      {"wiener_interp", 2.0, &InequalityRatios::wiener},
  };
  for (const Family& f : families) {
    double worst = 0.0;
    std::size_t worst_i = 0;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      const double v = ratios[i].*f.field;
      if (v > f.constant) ++violations;
      if (v > worst) {
        worst = v;
        worst_i = i;
      }
    }
    ClauseResult c = clause(f.name, worst, f.constant);
    c.worst_seed = worst_i;
    c.detail = std::to_string(violations) + " violations in " + std::to_string(trials);
    rep.clauses.push_back(c);
  }
  // Largest observed ratio for the A1 interpolation, i.e. the best constant.
  ClauseResult best = *rep.find("wiener_interp");
  best.name = "wiener_best_constant";
  best.informational = true;
  best.detail = "sup A1^2/(A0 A2) over trials";
  rep.clauses.push_back(best);
  rep.note = "seed " + std::to_string(seed) + ", worst_seed is the trial index";
  return rep;
}

TwinRunResult twin_run_stability(const SpectralField& u0, const SpectralField& perturbation,
                                 const ModelParams& p, const StepperConfig& cfg,
                                 const TwinRunOptions& options) {
  if (!(u0.grid() == perturbation.grid())) {
    throw std::invalid_argument("twin run: grid mismatch");
  }
  const double base = l2_norm(u0);
  const double delta = l2_norm(perturbation);
  if (delta > 1e-3 * base) {
    throw std::invalid_argument("twin run: |perturbation| must be <= 1e-3 |u0|");
  }
  cfg.validate();

  TwinRunResult out;
  out.report.title = "twin_run";
  const bool scaled = options.scale_factor > 0.0;
  Stepper a(u0.grid(), p, cfg.scheme);
  Stepper b(u0.grid(), p, cfg.scheme);
  Stepper c(u0.grid(), p, cfg.scheme);
  SolverState sa{0.0, u0, 0};
  SolverState sb{0.0, u0 + perturbation, 0};
  SolverState sc{0.0, u0 + options.scale_factor * perturbation, 0};

  auto separation = [](const SolverState& x, const SolverState& y) {
    return l2_norm(y.u - x.u);
  };
  out.times.push_back(0.0);
  out.separation.push_back(separation(sa, sb));
  double scaled_final = 0.0;
  try {
    const double eps = 1e-9 * cfg.dt;
    long steps = 0;
    while (cfg.t_end - sa.t > eps) {
      const double h = std::min(cfg.dt, cfg.t_end - sa.t);
      a.step(sa, h);
      b.step(sb, h);
      if (scaled) c.step(sc, h);
      ++steps;
      if (steps % cfg.log_every == 0 || cfg.t_end - sa.t <= eps) {
        out.times.push_back(sa.t);
        out.separation.push_back(separation(sa, sb));
      }
    }
    if (scaled) scaled_final = separation(sa, sc);
  } catch (const BlowUpError& e) {
    out.report.inconclusive = true;
    out.report.note = std::string("blow-up: ") + e.what();
    return out;
  }

  const double u_zero = out.separation.front();
  if (u_zero == 0.0) {
    out.report.clauses.push_back(clause("envelope", 0.0, options.envelope_factor));
    if (scaled) out.report.clauses.push_back(clause("linear_scaling", 0.0, options.scale_tolerance));
    out.report.note = "zero perturbation";
    return out;
  }
  // Least-squares K through the origin of log(|U|/|U0|) against t.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const double y = std::log(out.separation[i] / u_zero);
    num += out.times[i] * y;
    den += out.times[i] * out.times[i];
  }
  out.growth_rate = den > 0.0 ? num / den : 0.0;
  double worst = 0.0;
  double worst_t = 0.0;
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const double ratio = out.separation[i] / (u_zero * std::exp(out.growth_rate * out.times[i]));
    if (ratio > worst) {
      worst = ratio;
      worst_t = out.times[i];
    }
  }
  ClauseResult env = clause("envelope", worst, options.envelope_factor);
  env.worst_time = worst_t;
  env.detail = "fitted K = " + format_double(out.growth_rate);
  out.report.clauses.push_back(env);
  if (scaled) {
    const double final_sep = out.separation.back();
    const double ratio = scaled_final / (options.scale_factor * final_sep);
    ClauseResult lin = clause("linear_scaling", std::abs(ratio - 1.0), options.scale_tolerance);
    lin.detail = "|U_scaled(T)| / (factor |U(T)|) = " + format_double(ratio);
    out.report.clauses.push_back(lin);
  }
  return out;
}

}  // namespace mgsim
