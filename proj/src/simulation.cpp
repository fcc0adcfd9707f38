#include "mgsim/simulation.hpp"

#include <cmath>
#include <stdexcept>

namespace mgsim {

namespace {

void check_initial(const SpectralField& u0, const ModelParams& p, const StepperConfig& cfg,
                   const RunOptions& options) {
  cfg.validate();
  p.validate(options.theorem_mode);
  if (u0.hermitian_defect() > 1e-12) {
    throw std::invalid_argument("initial condition is not Hermitian (real)");
  }
  if (!u0.all_finite()) throw std::invalid_argument("initial condition has non-finite entries");
  if (options.theorem_mode && std::abs(mean_value(u0)) > 1e-12) {
    throw std::invalid_argument("constraint violated: theorem mode requires mean-zero u0");
  }
}

// Drives the step loop; `on_step` returns after each completed step.
template <class OnStep>
void march(SolverState& state, Stepper& stepper, const StepperConfig& cfg, OnStep&& on_step) {
  const double t_end = cfg.t_end;
  const double eps = 1e-9 * cfg.dt;
  long fixed_steps = 0;
  while (t_end - state.t > eps) {
    double h = cfg.adapt ? stable_dt(state.u, stepper.params(), cfg) : cfg.dt;
    const double remaining = t_end - state.t;
    if (h >= remaining - eps) h = remaining;
    stepper.step(state, h);
    if (!cfg.adapt) {
      ++fixed_steps;
      state.t = std::min(t_end, fixed_steps * cfg.dt);
      if (t_end - state.t <= eps) state.t = t_end;
    } else if (t_end - state.t <= eps) {
      state.t = t_end;
    }
    on_step();
  }
}

}  // namespace

TrajectoryLog run_simulation(const SpectralField& u0, const ModelParams& p,
                             const StepperConfig& cfg, const DiagnosticHook& hook,
                             const RunOptions& options) {
  check_initial(u0, p, cfg, options);
  auto log = std::make_shared<TrajectoryLog>();
  log->params = p;
  log->cfg = cfg;

  Stepper stepper(u0.grid(), p, cfg.scheme);
  DiagnosticsContext diag(u0.grid(), p, options.sup_refine);
  SolverState state{0.0, u0, 0};
  state.u.enforce_hermitian();

  auto record = [&] {
    std::optional<DiagnosticsRecord> prev;
    if (!log->records.empty()) prev = log->records.back();
    const DiagnosticsRecord r = diag.compute(state, prev);
    log->append(r);
    if (hook) hook(state, r);
  };
  auto snapshot = [&] {
    if (options.snapshot_every > 0) log->snapshots.push_back({state.step_count, state.t, state.u});
  };

  record();
  snapshot();
  try {
    march(state, stepper, cfg, [&] {
      const bool last = state.t >= cfg.t_end;
      if (last || state.step_count % cfg.log_every == 0) record();
      if (options.snapshot_every > 0 && (last || state.step_count % options.snapshot_every == 0)) {
        snapshot();
      }
    });
  } catch (const BlowUpError& e) {
    log->finalize(options.residual_stencil);
    throw SimulationBlowUp(e, log);
  }
  log->finalize(options.residual_stencil);
  return std::move(*log);
}

SpectralField integrate(const SpectralField& u0, const ModelParams& p, const StepperConfig& cfg) {
  check_initial(u0, p, cfg, RunOptions{});
  Stepper stepper(u0.grid(), p, cfg.scheme);
  SolverState state{0.0, u0, 0};
  march(state, stepper, cfg, [] {});
  return state.u;
}

}  // namespace mgsim
