#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mgsim/operators.hpp"
#include "mgsim/stepper.hpp"

namespace mgsim {

// Norms on the channel, |Omega| = 2 pi. For coefficients u_hat(n, m):
//   |u|_L2^2       = pi sum |u_hat|^2
//   |grad u|_L2^2  = pi sum (n^2 + m^2 pi^2) |u_hat|^2
//   mean           = sum_{m odd} 2 Re u_hat(0, m) / (m pi)
double l2_norm(const SpectralField& u);
double h1_seminorm(const SpectralField& u);
double mean_value(const SpectralField& u);
/// (f, g) = integral of f g over the channel.
double inner_product(const SpectralField& f, const SpectralField& g);

/// sum (|n|^s + |m|^s) |u_hat(n, m)|, with weight 2 for s = 0.
double wiener_norm(const SpectralField& u, int s);

/// (Tu, u), exact in coefficient space.
double tu_inner(const SpectralField& u, OperatorWorkspace& ws);

struct Extremum {
  double value = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct Extrema {
  Extremum max;
  Extremum min;
};

/// Spatial max and min over the closed channel (walls included, so
/// max >= 0 >= min). Located on the grid refined by `refine`, then polished by
/// Newton iteration on the spectral representation.
class ExtremaFinder {
 public:
  explicit ExtremaFinder(const Grid& grid, int refine = 4);
  Extrema find(const SpectralField& u);

 private:
  Grid fine_;
  SpectralTransform transform_;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double l2 = 0.0;
  double h1_dot = 0.0;
  double linf = 0.0;
  double max_u = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
  double min_u = 0.0;
  double min_x = 0.0;
  double min_y = 0.0;
  double mean = 0.0;
  double wiener0 = 0.0;
  double wiener1 = 0.0;
  double wiener2 = 0.0;
  /// |d/dt(|u|^2/2) + mu |grad u|^2 - alpha |u|^2 + beta (Tu, u)|
  double energy_residual = 0.0;
  /// max(0, d/dt w0 - 2 w0 w2 + mu w2)
  double wiener_ineq_residual = 0.0;
  /// (Tu, u), kept for recomputing the residuals.
  double tu_u = 0.0;
};

/// Everything compute_record needs besides the state.
class DiagnosticsContext {
 public:
  DiagnosticsContext(const Grid& grid, const ModelParams& params, int sup_refine = 4);

  const ModelParams& params() const { return params_; }

  /// Record for `state`; the residuals use a backward difference against
  /// `prev` (zero without it). TrajectoryLog::finalize replaces them.
  DiagnosticsRecord compute(const SolverState& state,
                            const std::optional<DiagnosticsRecord>& prev = std::nullopt);

 private:
  ModelParams params_;
  OperatorWorkspace ws_;
  ExtremaFinder extrema_;
};

DiagnosticsRecord compute_record(const SolverState& state, const ModelParams& params,
                                 const std::optional<DiagnosticsRecord>& prev = std::nullopt);

/// Residuals at sample i from d/dt estimated on the sample times.
double energy_residual(const DiagnosticsRecord& r, double d_half_l2sq, const ModelParams& p);
double wiener_residual(const DiagnosticsRecord& r, double d_wiener0, const ModelParams& p);

/// Weights w_j with f'(z) ~ sum_j w_j f(x_j) (Fornberg's recurrence).
std::vector<double> derivative_weights(double z, std::span<const double> x);

struct Snapshot {
  long step;
  double t;
  SpectralField u;
};

struct TrajectoryLog {
  ModelParams params;
  StepperConfig cfg;
  std::vector<DiagnosticsRecord> records;
  std::vector<Snapshot> snapshots;

  /// Throws std::invalid_argument unless r.t exceeds the last record time.
  void append(const DiagnosticsRecord& r);

  /// Recompute both residuals with time derivatives from a `stencil`-point
  /// finite-difference fit over neighbouring samples (centered in the
  /// interior, one-sided at the ends).
  void finalize(int stencil = 7);
};

}  // namespace mgsim
