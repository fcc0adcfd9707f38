#pragma once

#include <functional>
#include <memory>

#include "mgsim/diagnostics.hpp"
#include "mgsim/stepper.hpp"

namespace mgsim {

struct RunOptions {
  /// Require alpha <= 0, no forcing and mean-zero u0 (to 1e-12).
  bool theorem_mode = false;
  /// Keep a snapshot every this many steps (0 = never); the initial and
  /// final states are always kept when enabled.
  int snapshot_every = 0;
  /// Refinement of the grid used for sup norms.
  int sup_refine = 4;
  /// Finite-difference stencil for the residual time derivatives.
  int residual_stencil = 7;
};

using DiagnosticHook = std::function<void(const SolverState&, const DiagnosticsRecord&)>;

/// Blow-up during run_simulation; carries the finalized log up to the last
/// valid state.
class SimulationBlowUp : public BlowUpError {
 public:
  SimulationBlowUp(const BlowUpError& cause, std::shared_ptr<TrajectoryLog> partial)
      : BlowUpError(cause), partial_(std::move(partial)) {}
  const TrajectoryLog& partial_log() const { return *partial_; }

 private:
  std::shared_ptr<TrajectoryLog> partial_;
};

/// Integrate from t = 0 to cfg.t_end, recording diagnostics at t = 0, every
/// cfg.log_every steps and at the final time. The hook runs after each record.
TrajectoryLog run_simulation(const SpectralField& u0, const ModelParams& p,
                             const StepperConfig& cfg, const DiagnosticHook& hook = {},
                             const RunOptions& options = {});

/// Final state of a run without diagnostics.
SpectralField integrate(const SpectralField& u0, const ModelParams& p, const StepperConfig& cfg);

}  // namespace mgsim
