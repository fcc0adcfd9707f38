#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mgsim/diagnostics.hpp"
#include "mgsim/simulation.hpp"

namespace mgsim {

enum class ClauseStatus { Pass, Fail, Skipped };

std::string_view to_string(ClauseStatus s);

/// Six significant digits, as used in report text.
std::string format_double(double v);

/// One checked inequality: value <= bound, margin = bound - value.
struct ClauseResult {
  std::string name;
  ClauseStatus status = ClauseStatus::Pass;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  /// Time of the worst sample (trajectory clauses).
  std::optional<double> worst_time;
  /// Seed of the worst field (battery clauses).
  std::optional<std::uint64_t> worst_seed;
  /// Informational clauses are reported but never fail the report.
  bool informational = false;
  std::string detail;
};

struct VerificationReport {
  std::string title;
  std::vector<ClauseResult> clauses;
  /// Set when the check could not be carried out (e.g. blow-up).
  bool inconclusive = false;
  std::string note;

  /// True when no non-informational clause failed and the run was conclusive.
  bool passed() const;
  const ClauseResult* find(std::string_view name) const;
  std::string to_text() const;
  std::string to_json() const;
};

struct Theorem1Tolerance {
  /// max_u may rise by rate * (t_{k+1} - t_k) between samples.
  double monotone_rate = 1e-6;
  /// linf(t) <= linf(0) + linf_slack.
  double linf_slack = 1e-6;
  /// |mean| <= mean_rel * |u0|_L2.
  double mean_rel = 1e-8;
  /// Energy bound multiplied by (1 + gronwall_rel).
  double gronwall_rel = 1e-3;
  /// energy_residual <= energy_rel * |u0|_L2^2.
  double energy_rel = 1e-4;

  /// All clauses from one number: absolute slack tol * dt for (a), relative
  /// to linf(0) for (b), to |u0| for (c), 1 + tol for (d), and tol |u0|^2 / dt
  /// for (e) with dt the largest sample spacing.
  static Theorem1Tolerance uniform(double tol, const TrajectoryLog& log);
};

struct Theorem2Tolerance {
  double monotone_rate = 1e-6;
  double integral_rel = 1e-3;
  double residual = 1e-4;

  static Theorem2Tolerance uniform(double tol) { return {tol, tol, tol}; }
};

/// Clauses a_extrema_monotone, b_linf_bound, c_mean_zero, d_gronwall,
/// e_energy_residual, plus the informational d_gronwall_exp_t (bound with
/// e^{T} instead of e^{beta^2 T}).
VerificationReport check_theorem1(const TrajectoryLog& log, const Theorem1Tolerance& tol);
VerificationReport check_theorem1(const TrajectoryLog& log, double tol);

/// Clauses a_smallness (informational precondition 2 w0(0) < mu),
/// b_wiener0_monotone and c_wiener2_integral (skipped without a), and
/// d_wiener_residual.
VerificationReport check_theorem2(const TrajectoryLog& log, const Theorem2Tolerance& tol);
VerificationReport check_theorem2(const TrajectoryLog& log, double tol);

struct BatteryOptions {
  int n_modes_x = 10;
  int n_modes_y = 10;
};

/// Functional inequalities on random band-limited mean-zero fields:
///   jensen:        |Tu|_L2 <= |grad u|_L2
///   interp_x:      |u_x|_L4^2 <= 3 |u_xx|_L2 |u|_Linf
///   interp_y:      |u_y|_L4^2 <= 3 |u_yy|_L2 |u|_Linf
///   wiener_interp: |u|_A1^2 <= 2 |u|_A0 |u|_A2
/// Values are worst ratios (left side over the right side without the
/// constant); wiener_best_constant reports the largest observed A1^2/(A0 A2).
/// Trial i uses the field of battery_field(seed, i); trials run in parallel.
VerificationReport check_inequality_battery(int trials, std::uint64_t seed,
                                            const BatteryOptions& options = {});

/// The random field of trial `index`.
SpectralField battery_field(std::uint64_t seed, std::uint64_t index,
                            const BatteryOptions& options = {});

/// Per-field ratios used by the battery.
struct InequalityRatios {
  double jensen;
  double interp_x;
  double interp_y;
  double wiener;
};
InequalityRatios inequality_ratios(const SpectralField& u);

struct TwinRunOptions {
  /// Also run the perturbation scaled by this factor and compare |U(T)|
  /// (0 disables).
  double scale_factor = 10.0;
  double envelope_factor = 2.0;
  double scale_tolerance = 0.05;
};

struct TwinRunResult {
  VerificationReport report;
  std::vector<double> times;
  std::vector<double> separation;  // |U(t)|_L2
  double growth_rate = 0.0;        // fitted K
};

/// Run u0 and u0 + perturbation in lockstep and fit |U(t)| <= |U(0)| e^{Kt}.
/// Clauses: envelope (max |U| / (|U0| e^{Kt}) <= envelope_factor) and
/// linear_scaling. Blow-up marks the report inconclusive.
TwinRunResult twin_run_stability(const SpectralField& u0, const SpectralField& perturbation,
                                 const ModelParams& p, const StepperConfig& cfg,
                                 const TwinRunOptions& options = {});

}  // namespace mgsim
