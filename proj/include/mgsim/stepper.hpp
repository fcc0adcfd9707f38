#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mgsim/operators.hpp"

namespace mgsim {

/// Time discretization of the explicit part. Both treat alpha - mu(n^2 + m^2 pi^2)
/// exactly per mode.
enum class Scheme {
  /// Heun's method on v = e^{-Lt} u.
  IntegratingFactorRK2,
  /// Cox-Matthews ETD2RK (phi-function weights).
  ExponentialRK2,
};

struct StepperConfig {
  double dt = 1e-3;
  double t_end = 2.0;
  double cfl_safety = 0.5;
  bool adapt = false;
  int log_every = 1;
  Scheme scheme = Scheme::IntegratingFactorRK2;

  /// Throws std::invalid_argument naming the violated clause.
  void validate() const;
  bool operator==(const StepperConfig&) const = default;
};

struct SolverState {
  double t = 0.0;
  SpectralField u;
  long step_count = 0;
};

/// Non-finite coefficients or an L2 norm above kBlowUpThreshold.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double last_valid_time, const std::string& what)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const { return last_valid_time_; }

 private:
  double last_valid_time_;
};

inline constexpr double kBlowUpThreshold = 1e12;

/// Reusable stepping context for one grid and one parameter set.
class Stepper {
 public:
  Stepper(const Grid& grid, ModelParams params, Scheme scheme = Scheme::IntegratingFactorRK2);

  const ModelParams& params() const { return params_; }
  Scheme scheme() const { return scheme_; }
  OperatorWorkspace& workspace() { return ws_; }

  /// Advance state by dt. On blow-up the state is left at its last valid
  /// value and BlowUpError is thrown.
  void step(SolverState& state, double dt);

 private:
  void prepare(double dt);

  ModelParams params_;
  Scheme scheme_;
  OperatorWorkspace ws_;
  std::vector<double> symbol_;
  double cached_dt_ = -1.0;
  // Per-coefficient real weights for the current dt.
  std::vector<double> decay_;      // e^{L dt}
  std::vector<double> w_first_;    // IF: dt/2 e^{L dt}; ETD: dt phi1(L dt)
  std::vector<double> w_second_;   // IF: dt/2;         ETD: dt phi2(L dt)
  std::vector<double> unit_dt_;    // IF: dt e^{L dt} (stage 1)
  SpectralField k1_;
  SpectralField k2_;
  SpectralField stage_;
};

/// One step of size cfg.dt with the configured scheme.
SolverState step_imex(const SolverState& state, const ModelParams& p, const StepperConfig& cfg);

/// cfl_safety * min(dx / |u|_inf, dy / |Tu|_inf, pi / (2 N |beta|)), capped at
/// cfg.dt. Sup norms are bounded by coefficient l1 sums. The zero field
/// returns cfg.dt.
double stable_dt(const SpectralField& u, const ModelParams& p, const StepperConfig& cfg);

/// phi1(z) = (e^z - 1)/z and phi2(z) = (e^z - 1 - z)/z^2, accurate near 0.
double phi1(double z);
double phi2(double z);

}  // namespace mgsim
