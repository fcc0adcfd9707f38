#include "mgsim/mms.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mgsim/diagnostics.hpp"
#include "mgsim/parallel.hpp"
#include "mgsim/transform.hpp"

namespace mgsim {

namespace {

SpectralField sample_and_transform(const Grid& grid, double (*shape)(double, double, int, int),
                                   int n0, int m0) {
  PhysicalField p(grid, YNodes::Interior);
  for (int r = 0; r < p.rows(); ++r) {
    const double y = p.y_of_row(r);
    for (int j = 0; j < p.nx(); ++j) p.at(j, r) = shape(p.x_of_col(j), y, n0, m0);
  }
  return forward_transform(p);
}

double linear_shape(double x, double y, int n0, int m0) {
  return std::sin(n0 * x) * std::sin(m0 * kPi * y);
}
double quadratic_shape(double x, double y, int n0, int m0) {
  return std::sin(2.0 * n0 * x) * (1.0 - std::cos(m0 * kPi * y));
}
double rotation_shape(double x, double y, int n0, int m0) {
  return std::cos(n0 * x) * (1.0 - std::cos(m0 * kPi * y));
}

struct RunErrors {
  SpectralField final_u;
  double l2 = 0.0, linf = 0.0, l2_tmax = 0.0, linf_tmax = 0.0;
  bool failed = false;
};

double sup_norm(const SpectralField& e) {
  ExtremaFinder finder(e.grid());
  const Extrema x = finder.find(e);
  return std::max(x.max.value, -x.min.value);
}

// One forced run from u_e(0); errors against u_e when `against_exact`.
RunErrors forced_run(const ManufacturedCase& c, ModelParams p, const Grid& grid, double dt,
                     double t_end, bool against_exact) {
  p.forcing = manufacture_forcing(c, p, grid);
  Stepper stepper(grid, p);
  SolverState s{0.0, c.exact_field(grid, 0.0), 0};
  RunErrors out{SpectralField(grid)};
  const long steps = std::max(1L, std::lround(t_end / dt));
  const double h = t_end / steps;
  const long sample_every = std::max(1L, steps / 50);
  ExtremaFinder finder(grid);
  try {
    for (long i = 0; i < steps; ++i) {
      stepper.step(s, h);
      s.t = (i + 1) * h;
      if (against_exact && ((i + 1) % sample_every == 0 || i + 1 == steps)) {
        const SpectralField e = s.u - c.exact_field(grid, s.t);
        const Extrema x = finder.find(e);
        out.l2_tmax = std::max(out.l2_tmax, l2_norm(e));
        out.linf_tmax = std::max(out.linf_tmax, std::max(x.max.value, -x.min.value));
      }
    }
  } catch (const BlowUpError&) {
    out.failed = true;
    return out;
  }
  out.final_u = s.u;
  if (against_exact) {
    const SpectralField e = s.u - c.exact_field(grid, t_end);
    out.l2 = l2_norm(e);
    out.linf = sup_norm(e);
  }
  return out;
}

// a (on a coarser x truncation) minus b, on b's grid.
SpectralField lift_difference(const SpectralField& a, const SpectralField& b) {
  SpectralField d = b;
  d *= -1.0;
  for (int n = -a.n_modes_x(); n <= a.n_modes_x(); ++n) {
    for (int m = 1; m <= a.n_modes_y(); ++m) d(n, m) += a(n, m);
  }
  return d;
}

}  // namespace

void ManufacturedCase::validate() const {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("manufactured: amplitude finite");
  if (!std::isfinite(decay)) throw std::invalid_argument("manufactured: decay finite");
  if (n0 < 1 || m0 < 1) throw std::invalid_argument("manufactured: n0 >= 1 and m0 >= 1");
}

double ManufacturedCase::exact(double x, double y, double t) const {
  return amplitude * std::exp(-decay * t) * std::sin(n0 * x) * std::sin(m0 * kPi * y);
}

SpectralField ManufacturedCase::exact_field(const Grid& grid, double t) const {
  if (n0 > grid.n_modes_x() || m0 > grid.n_modes_y()) {
    throw std::invalid_argument("manufactured: mode (n0, m0) outside the truncation");
  }
  return single_mode(grid, n0, m0, cplx(0.0, -0.5 * amplitude * std::exp(-decay * t)));
}

ManufacturedForcing::ManufacturedForcing(const ManufacturedCase& c, const ModelParams& p,
                                         const Grid& grid)
    : case_(c),
      mu_(p.mu),
      alpha_(p.alpha),
      beta_(p.beta),
      linear_shape_(sample_and_transform(grid, &linear_shape, c.n0, c.m0)),
      quadratic_shape_(sample_and_transform(grid, &quadratic_shape, c.n0, c.m0)),
      rotation_shape_(sample_and_transform(grid, &rotation_shape, c.n0, c.m0)) {
  c.validate();
}

void ManufacturedForcing::accumulate(double t, OperatorWorkspace&, SpectralField& target) const {
  if (!(target.grid() == linear_shape_.grid())) {
    throw std::invalid_argument("manufactured forcing: built for a different grid");
  }
  const double a = case_.amplitude;
  const double k = case_.m0 * kPi;
  const double e1 = std::exp(-case_.decay * t);
  const double w_lin = a * e1 * (-case_.decay - alpha_ + mu_ * (case_.n0 * case_.n0 + k * k));
  const double w_quad = 0.5 * a * a * case_.n0 * e1 * e1;
  const double w_rot = a * beta_ * case_.n0 / k * e1;
  auto dst = target.coefficients();
  const auto l = linear_shape_.coefficients();
  const auto q = quadratic_shape_.coefficients();
  const auto r = rotation_shape_.coefficients();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w_lin * l[i] + w_quad * q[i] + w_rot * r[i];
}

double ManufacturedForcing::evaluate(double x, double y, double t) const {
  const double a = case_.amplitude;
  const double k = case_.m0 * kPi;
  const double e1 = std::exp(-case_.decay * t);
  const int n0 = case_.n0;
  return a * e1 * (-case_.decay - alpha_ + mu_ * (n0 * n0 + k * k)) * linear_shape(x, y, n0, case_.m0) +
         0.5 * a * a * n0 * e1 * e1 * quadratic_shape(x, y, n0, case_.m0) +
         a * beta_ * n0 / k * e1 * rotation_shape(x, y, n0, case_.m0);
}

std::shared_ptr<const Forcing> manufacture_forcing(const ManufacturedCase& c,
                                                   const ModelParams& p, const Grid& grid) {
  return std::make_shared<ManufacturedForcing>(c, p, grid);
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& e) {
  if (h.size() != e.size() || h.size() < 2) {
    throw std::invalid_argument("fitted_order: need >= 2 matching samples");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceTable convergence_study(const ManufacturedCase& c, const ModelParams& p,
                                   const StudyPlan& plan) {
  c.validate();
  if (plan.dts.size() < 3 || plan.y_modes.size() < 3 || plan.x_modes.size() < 3) {
    throw std::invalid_argument("convergence study: each sweep needs >= 3 entries");
  }
  ModelParams base = p;
  base.forcing = nullptr;
  base.validate();

  struct Job {
    std::string sweep;
    int n, m;
    double dt;
    bool exact;
  };
  std::vector<Job> jobs;
  for (double dt : plan.dts) jobs.push_back({"t", plan.n_fine, plan.m_fine, dt, true});
  for (int m : plan.y_modes) jobs.push_back({"y", plan.n_fine, m, plan.dt_fine, true});
  for (int n : plan.x_modes) jobs.push_back({"x", n, plan.m_fine, plan.dt_x, false});
  for (int m : plan.y_modes) jobs.push_back({"y_coarse", plan.n_fine, m, 2.0 * plan.dt_fine, false});
  jobs.push_back({"x_ref", plan.n_fine, plan.m_fine, plan.dt_x, false});

  std::vector<std::unique_ptr<RunErrors>> results(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& j = jobs[i];
    const Grid grid(j.n, j.m, plan.oversample);
    results[i] = std::make_unique<RunErrors>(forced_run(c, base, grid, j.dt, plan.t_end, j.exact));
  });

  ConvergenceTable table;
  std::vector<double> t_h, t_l2, t_linf, y_h, y_m, y_l2, y_linf;
  const std::size_t nt = plan.dts.size();
  const std::size_t ny = plan.y_modes.size();
  const RunErrors& ref = *results.back();
  const std::size_t nx = plan.x_modes.size();
  for (std::size_t i = 0; i < nt + ny + nx; ++i) {
    const Job& j = jobs[i];
    RunErrors& r = *results[i];
    ConvergenceRow row{j.sweep, j.n, j.m, j.dt, r.l2, r.linf, r.l2_tmax, r.linf_tmax, r.failed};
    if (j.sweep == "y") {
      // (4 u(dt) - u(2 dt)) / 3 cancels the dt^2 term of the time error.
      RunErrors& coarse = *results[nt + ny + nx + (i - nt)];
      row.failed = r.failed || coarse.failed;
      if (!row.failed) {
        SpectralField extrap = 4.0 * r.final_u - coarse.final_u;
        extrap *= 1.0 / 3.0;
        const SpectralField e = extrap - c.exact_field(extrap.grid(), plan.t_end);
        r.l2 = row.err_l2 = l2_norm(e);
        r.linf = row.err_linf = sup_norm(e);
      }
      r.failed = row.failed;
    }
    if (j.sweep == "x" && !r.failed && !ref.failed) {
      const SpectralField d = lift_difference(r.final_u, ref.final_u);
      row.err_l2 = l2_norm(d);
      row.err_linf = sup_norm(d);
      if (2 * c.n0 < j.n) {
        table.xerr_l2 = std::max(table.xerr_l2, row.err_l2);
        table.xerr_linf = std::max(table.xerr_linf, row.err_linf);
      }
    }
    table.rows.push_back(row);
  }
  for (std::size_t i = 0; i + 1 < nt; ++i) {
    const RunErrors& a = *results[i];
    const RunErrors& b = *results[i + 1];
    if (a.failed || b.failed) continue;
    const SpectralField d = a.final_u - b.final_u;
    t_h.push_back(plan.dts[i]);
    t_l2.push_back(l2_norm(d));
    t_linf.push_back(sup_norm(d));
  }
  for (std::size_t i = 0; i < ny; ++i) {
    const RunErrors& r = *results[nt + i];
    if (r.failed) continue;
    y_h.push_back(Grid(plan.n_fine, plan.y_modes[i], plan.oversample).dy());
    y_m.push_back(1.0 / plan.y_modes[i]);
    y_l2.push_back(r.l2);
    y_linf.push_back(r.linf);
  }
  if (t_h.size() >= 2) {
    table.order_t_l2 = fitted_order(t_h, t_l2);
    table.order_t_linf = fitted_order(t_h, t_linf);
  }
  if (y_h.size() >= 2) {
    table.order_y_l2 = fitted_order(y_h, y_l2);
    table.order_y_linf = fitted_order(y_h, y_linf);
    table.order_m_l2 = fitted_order(y_m, y_l2);
    table.order_m_linf = fitted_order(y_m, y_linf);
  }
  return table;
}

void ConvergenceTable::write_csv(std::ostream& os) const {
  os << "resolution_x,resolution_y,dt,err_l2,err_linf\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.resolution_x << ',' << r.resolution_y << ',' << r.dt << ',';
    if (r.failed) {
      os << "failed,failed\n";
    } else {
      os << r.err_l2 << ',' << r.err_linf << '\n';
    }
  }
  os << "order_t,,," << order_t_l2 << ',' << order_t_linf << '\n';
  os << "order_y,,," << order_y_l2 << ',' << order_y_linf << '\n';
  os << "xerr_max,,," << xerr_l2 << ',' << xerr_linf << '\n';
}

std::string ConvergenceTable::to_text() const {
  std::ostringstream os;
  os << std::setprecision(4);
  os << "sweep  N    M    dt          err_l2      err_linf    tmax_l2     tmax_linf\n";
  for (const auto& r : rows) {
    os << std::left << std::setw(7) << r.sweep << std::setw(5) << r.resolution_x << std::setw(5)
       << r.resolution_y << std::setw(12) << r.dt;
    if (r.failed) {
      os << "failed\n";
      continue;
    }
    os << std::setw(12) << r.err_l2 << std::setw(12) << r.err_linf << std::setw(12)
       << r.err_l2_tmax << std::setw(12) << r.err_linf_tmax << '\n';
  }
  os << "order_t  l2 " << order_t_l2 << "  linf " << order_t_linf << '\n';
  os << "order_y  l2 " << order_y_l2 << "  linf " << order_y_linf << "  (against 1/M: l2 "
     << order_m_l2 << "  linf " << order_m_linf << ")\n";
  os << "xerr_max l2 " << xerr_l2 << "  linf " << xerr_linf << '\n';
  return os.str();
}

VerificationReport check_convergence(const ConvergenceTable& t, const ConvergenceCriteria& k) {
  VerificationReport rep;
  rep.title = "mms";
  auto add = [&](std::string name, double value, double bound, bool at_least, std::string detail) {
    ClauseResult c;
    c.name = std::move(name);
    c.value = value;
    c.bound = bound;
    c.margin = at_least ? value - bound : bound - value;
    c.status = c.margin >= 0.0 ? ClauseStatus::Pass : ClauseStatus::Fail;
    c.detail = std::move(detail);
    rep.clauses.push_back(c);
  };
  const std::string band = "|order - " + format_double(k.order_t) + "| <= bound";
  add("order_t_l2", std::abs(t.order_t_l2 - k.order_t), k.order_t_band, false,
      band + ", order " + format_double(t.order_t_l2));
  add("order_t_linf", std::abs(t.order_t_linf - k.order_t), k.order_t_band, false,
      band + ", order " + format_double(t.order_t_linf));
  add("xerr_l2", t.xerr_l2, k.x_error, false, "x sweep with n0 < N/2");
  add("xerr_linf", t.xerr_linf, k.x_error, false, "x sweep with n0 < N/2");
  add("order_y_l2", t.order_y_l2, k.order_y_min, true,
      "order >= bound; against 1/M: " + format_double(t.order_m_l2));
  add("order_y_linf", t.order_y_linf, k.order_y_min, true,
      "order >= bound; against 1/M: " + format_double(t.order_m_linf));
  for (const auto& r : t.rows) {
    if (r.failed) {
      rep.inconclusive = true;
      rep.note = "a study run blew up";
    }
  }
  return rep;
}

}  // namespace mgsim
