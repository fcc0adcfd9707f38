#include "mgsim/oracle_compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mgsim/fd_oracle.hpp"
#include "mgsim/mms.hpp"
#include "mgsim/parallel.hpp"
#include "mgsim/simulation.hpp"
#include "mgsim/transform.hpp"

namespace mgsim {

namespace {

std::vector<double> sample(const SpectralField& u, const fd::FdGrid& g) {
  std::vector<double> xs(g.nx), ys(g.ny + 1);
  for (int j = 0; j < g.nx; ++j) xs[j] = g.x(j);
  for (int k = 0; k <= g.ny; ++k) ys[k] = g.y(k);
  return evaluate_on(u, xs, ys);
}

}  // namespace

OracleComparison compare_with_fd(const SpectralField& u0, const ModelParams& p,
                                 const OracleStudy& study) {
  if (study.sizes.size() < 2) throw std::invalid_argument("oracle comparison: need >= 2 sizes");
  OracleComparison out;
  out.sizes = study.sizes;
  out.report.title = "oracle";
  ClauseResult c;
  c.name = "cross_solver_order";
  c.bound = study.min_order;

  SpectralField reference(u0.grid());
  try {
    StepperConfig cfg;
    cfg.dt = study.spectral_dt;
    cfg.t_end = study.t_end;
    reference = integrate(u0, p, cfg);
  } catch (const BlowUpError& e) {
    out.report.inconclusive = true;
    out.report.note = std::string("spectral run: ") + e.what();
    return out;
  }

  out.max_error.assign(study.sizes.size(), 0.0);
  std::vector<std::string> failure(study.sizes.size());
  parallel_for(study.sizes.size(), [&](std::size_t i) {
    const fd::FdGrid g{study.sizes[i], study.sizes[i]};
    fd::FdState s(g);
    s.values = sample(u0, g);
    try {
      const fd::FdState end = fd::fd_run(s, p, study.t_end, study.fd_safety);
      const std::vector<double> ref = sample(reference, g);
      double err = 0.0;
      for (std::size_t k = 0; k < ref.size(); ++k) err = std::max(err, std::abs(ref[k] - end.values[k]));
      out.max_error[i] = err;
    } catch (const fd::FdInstability& e) {
      failure[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < failure.size(); ++i) {
    if (!failure[i].empty()) {
      out.report.inconclusive = true;
      out.report.note = "fd " + std::to_string(study.sizes[i]) + ": " + failure[i];
      return out;
    }
  }

  std::vector<double> h;
  for (int n : study.sizes) h.push_back(1.0 / n);
  out.min_order = std::numeric_limits<double>::infinity();
  std::ostringstream detail;
  for (std::size_t i = 0; i < study.sizes.size(); ++i) {
    detail << (i ? ", " : "") << study.sizes[i] << "^2: " << out.max_error[i];
    if (i > 0) {
      const double q = std::log(out.max_error[i - 1] / out.max_error[i]) / std::log(h[i - 1] / h[i]);
      out.min_order = std::min(out.min_order, q);
    }
  }
  out.fitted_order = fitted_order(h, out.max_error);
  const int finest = study.sizes.back();
  out.constant = out.max_error.back() * finest * finest;
  detail << "; fitted order " << out.fitted_order << ", C = " << out.constant;

  c.value = out.min_order;
  c.margin = out.min_order - study.min_order;
  c.status = out.min_order >= study.min_order ? ClauseStatus::Pass : ClauseStatus::Fail;
  c.detail = "order >= bound; " + detail.str();
  out.report.clauses.push_back(c);
  return out;
}

}  // namespace mgsim
