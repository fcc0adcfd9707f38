// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status 1 if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mgsim/config.hpp"
#include "mgsim/mms.hpp"
#include "mgsim/oracle_compare.hpp"
#include "mgsim/presets.hpp"
#include "mgsim/simulation.hpp"
#include "mgsim/verification.hpp"

using namespace mgsim;

namespace {

int failures = 0;

void line(const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

std::string clause_text(const VerificationReport& r, const char* name) {
  const ClauseResult* c = r.find(name);
  if (!c) return std::string(name) + " missing";
  return r.title + "." + name + " " + format_double(c->value) + " vs " + format_double(c->bound) +
         " [" + std::string(to_string(c->status)) + "]";
}

bool clause_ok(const VerificationReport& r, const char* name) {
  const ClauseResult* c = r.find(name);
  return c && !r.inconclusive && c->status == ClauseStatus::Pass;
}

struct TheoremRun {
  std::string name;
  ScenarioConfig config;
  TrajectoryLog log;
  VerificationReport t1;
};

TheoremRun theorem_run(const std::string& name) {
  TheoremRun run{name, preset_scenario(name), {}, {}};
  RunOptions opt;
  opt.theorem_mode = true;
  run.log = run_simulation(run.config.initial_field(), run.config.model_params(), run.config.stepper,
                           {}, opt);
  run.t1 = check_theorem1(run.log, Theorem1Tolerance{});
  run.t1.title = name;
  return run;
}

// linf(t_{k+1}) <= linf(t_k) + 1e-6 (t_{k+1} - t_k); returns the worst excess.
double linf_step_excess(const TrajectoryLog& log) {
  double worst = -INFINITY;
  for (std::size_t k = 1; k < log.records.size(); ++k) {
    const auto& a = log.records[k - 1];
    const auto& b = log.records[k];
    worst = std::max(worst, b.linf - a.linf - 1e-6 * (b.t - a.t));
  }
  return worst;
}

void max_principle(const std::vector<TheoremRun>& runs) {
  bool pass = true;
  std::ostringstream d;
  for (const auto& r : runs) {
    const double excess = linf_step_excess(r.log);
    pass = pass && excess <= 0.0 && clause_ok(r.t1, "a_extrema_monotone") &&
           clause_ok(r.t1, "b_linf_bound");
    d << r.name << " linf step excess " << format_double(excess) << ", "
      << clause_text(r.t1, "a_extrema_monotone") << "; ";
  }
  line("max_principle", pass, d.str());
}

void mean_zero(const std::vector<TheoremRun>& runs) {
  bool pass = true;
  std::ostringstream d;
  for (const auto& r : runs) {
    pass = pass && clause_ok(r.t1, "c_mean_zero");
    d << clause_text(r.t1, "c_mean_zero") << "; ";
  }
  line("mean_zero", pass, d.str());
}

void energy(const std::vector<TheoremRun>& runs) {
  bool pass = true;
  std::ostringstream d;
  for (const auto& r : runs) {
    pass = pass && clause_ok(r.t1, "e_energy_residual") && clause_ok(r.t1, "d_gronwall");
    d << clause_text(r.t1, "e_energy_residual") << ", " << clause_text(r.t1, "d_gronwall") << "; ";
  }
  line("energy_identity_gronwall", pass, d.str());
}

void battery() {
  const VerificationReport r = check_inequality_battery(500, 12345);
  line("jensen", clause_ok(r, "jensen"), clause_text(r, "jensen"));
  line("interpolation",
       clause_ok(r, "interp_x") && clause_ok(r, "interp_y") && clause_ok(r, "wiener_interp"),
       clause_text(r, "interp_x") + ", " + clause_text(r, "interp_y") + ", " +
           clause_text(r, "wiener_interp"));
}

void theorem2(const TheoremRun& run) {
  VerificationReport r = check_theorem2(run.log, Theorem2Tolerance{});
  r.title = run.name;
  const ClauseResult* pre = r.find("a_smallness");
  const bool regime = pre && pre->status == ClauseStatus::Pass;
  line("theorem2",
       regime && clause_ok(r, "b_wiener0_monotone") && clause_ok(r, "c_wiener2_integral") &&
           clause_ok(r, "d_wiener_residual"),
       clause_text(r, "a_smallness") + ", " + clause_text(r, "b_wiener0_monotone") + ", " +
           clause_text(r, "c_wiener2_integral") + ", " + clause_text(r, "d_wiener_residual"));
}

void oracle() {
  const ScenarioConfig c = preset_scenario("small_data");
  const OracleComparison cmp = compare_with_fd(c.initial_field(), c.model_params(), OracleStudy{});
  std::ostringstream d;
  for (std::size_t i = 0; i < cmp.sizes.size(); ++i) {
    d << cmp.sizes[i] << "^2 err " << format_double(cmp.max_error[i]) << ", ";
  }
  d << "min order " << format_double(cmp.min_order) << " (>= 1.8)";
  line("cross_solver_oracle", clause_ok(cmp.report, "cross_solver_order"), d.str());
}

void mms() {
  ModelParams p;
  p.alpha = -0.1;
  p.beta = 0.5;
  const ConvergenceTable t = convergence_study(ManufacturedCase{}, p, StudyPlan{});
  const VerificationReport r = check_convergence(t);
  bool pass = !r.clauses.empty();
  for (const auto& c : r.clauses) pass = pass && c.status == ClauseStatus::Pass;
  auto st = [&](const char* name) {
    const ClauseResult* c = r.find(name);
    return std::string(" [") + (c ? std::string(to_string(c->status)) : "missing") + "]";
  };
  std::ostringstream d;
  d << "order_t " << format_double(t.order_t_l2) << "/" << format_double(t.order_t_linf)
    << st("order_t_l2") << st("order_t_linf") << " (2 +- 0.1), x error " << format_double(t.xerr_l2)
    << "/" << format_double(t.xerr_linf) << st("xerr_l2") << st("xerr_linf")
    << " (<= 1e-10), order_y " << format_double(t.order_y_l2) << "/" << format_double(t.order_y_linf)
    << st("order_y_l2") << st("order_y_linf") << " (>= 2)";
  line("mms_orders", pass, d.str());
}

void twin() {
  const ScenarioConfig c = preset_scenario("small_data");
  const SpectralField u0 = c.initial_field();
  const TwinRunResult r = twin_run_stability(u0, single_mode(u0.grid(), 1, 1, 1e-8),
                                             c.model_params(), c.stepper);
  line("twin_run", clause_ok(r.report, "envelope") && clause_ok(r.report, "linear_scaling"),
       "K = " + format_double(r.growth_rate) + ", " + clause_text(r.report, "envelope") + ", " +
           clause_text(r.report, "linear_scaling"));
}

void linear_exactness() {
  const Grid g(32, 32);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.log_every = 100;
  double worst = 0.0;
  for (int variant = 0; variant < 2; ++variant) {
    ModelParams p;
    p.alpha = -0.1;
    if (variant == 0) {
      p.nonlinear = false;
    } else {
      p.nonlinear_cut = ModeCut{-1, 0};
    }
    for (auto [n, m] : {std::pair{1, 1}, std::pair{0, 3}, std::pair{5, 2}, std::pair{12, 9}}) {
      const cplx a(0.6, n == 0 ? 0.0 : -0.8);
      const SpectralField u0 = single_mode(g, n, m, a);
      const double rate = p.alpha - p.mu * (n * n + m * m * kPi * kPi);
      run_simulation(u0, p, cfg, [&](const SolverState& s, const DiagnosticsRecord&) {
        SpectralField exact = u0;
        exact *= std::exp(rate * s.t);
        const double err = (s.u - exact).max_abs();
        if (s.t > 0.0) worst = std::max(worst, err / s.t);
      });
    }
  }
  line("linear_exactness", worst <= 1e-12,
       "max coefficient error per unit time " + format_double(worst) + " (<= 1e-12)");
}

template <class F>
void timed(const char* what, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "  (" << what << " " << format_double(s) << " s)\n";
}

}  // namespace

int main() {
  std::vector<TheoremRun> runs;
  timed("theorem runs", [&] {
    runs.push_back(theorem_run("small_data"));
    runs.push_back(theorem_run("wiener_small"));
  });
  max_principle(runs);
  mean_zero(runs);
  energy(runs);
  timed("battery", battery);
  theorem2(runs[1]);
  timed("oracle", oracle);
  timed("mms", mms);
  timed("twin", twin);
  timed("linear", linear_exactness);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
