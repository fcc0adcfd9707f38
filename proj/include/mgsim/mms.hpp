#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mgsim/operators.hpp"
#include "mgsim/stepper.hpp"
#include "mgsim/verification.hpp"

namespace mgsim {

/// u_e = a e^{-lambda t} sin(n0 x) sin(m0 pi y).
struct ManufacturedCase {
  double amplitude = 0.1;
  double decay = 1.0;
  int n0 = 1;
  int m0 = 1;

  void validate() const;
  double exact(double x, double y, double t) const;
  /// Coefficients of u_e(t) on `grid` (requires n0 <= N, m0 <= M).
  SpectralField exact_field(const Grid& grid, double t) const;
  bool operator==(const ManufacturedCase&) const = default;
};

/// F = d_t u_e + u_e d_x u_e - T u_e d_y u_e - mu Lap u_e - alpha u_e + beta T u_e.
/// With k = m0 pi, s = sin(n0 x), c = cos(n0 x), E = e^{-lambda t}:
///   F = a E (-lambda - alpha + mu (n0^2 + k^2)) s sin(ky)
///     + (a^2 n0 / 2) E^2 sin(2 n0 x) (1 - cos ky)
///     + (a beta n0 / k) E c (1 - cos ky)
class ManufacturedForcing : public Forcing {
 public:
  /// The three spatial shapes are sampled on the collocation grid of `grid`
  /// and transformed once (sine quadrature in y).
  ManufacturedForcing(const ManufacturedCase& c, const ModelParams& p, const Grid& grid);

  std::string_view name() const override { return "manufactured"; }
  void accumulate(double t, OperatorWorkspace& ws, SpectralField& target) const override;

  /// Pointwise closed form.
  double evaluate(double x, double y, double t) const;

 private:
  ManufacturedCase case_;
  double mu_, alpha_, beta_;
  SpectralField linear_shape_;
  SpectralField quadratic_shape_;
  SpectralField rotation_shape_;
};

std::shared_ptr<const Forcing> manufacture_forcing(const ManufacturedCase& c,
                                                   const ModelParams& p, const Grid& grid);

struct ConvergenceRow {
  std::string sweep;  // "t", "y" or "x"
  int resolution_x = 0;
  int resolution_y = 0;
  double dt = 0.0;
  double err_l2 = 0.0;
  double err_linf = 0.0;
  double err_l2_tmax = 0.0;
  double err_linf_tmax = 0.0;
  bool failed = false;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slopes of log error against log dt, and against the log
  /// of the y node spacing 1 / (ny + 1) for the y sweep.
  double order_t_l2 = 0.0, order_t_linf = 0.0;
  double order_y_l2 = 0.0, order_y_linf = 0.0;
  /// y sweep slopes against log(1/M), for reference.
  double order_m_l2 = 0.0, order_m_linf = 0.0;
  /// Largest x-sweep error among resolutions with n0 < N/2.
  double xerr_l2 = 0.0, xerr_linf = 0.0;

  /// resolution_x,resolution_y,dt,err_l2,err_linf, then footer rows
  /// order_t, order_y and xerr_max with values in the error columns.
  void write_csv(std::ostream& os) const;
  std::string to_text() const;
};

/// Sweeps of the spectral solver with manufactured forcing.
///   t: dts at (n_fine, m_fine); errors are differences between successive
///      dt (self-convergence), since the spatial error does not shrink with dt.
///   y: y_modes at n_fine; final errors against u_e after Richardson
///      extrapolation of the runs at dt_fine and 2 dt_fine (time-max errors
///      are from the dt_fine run). The default sizes give ny + 1 = 36, 72,
///      144 at oversample 2.
///   x: x_modes at (m_fine, dt_x); errors against the run at n_fine.
struct StudyPlan {
  std::vector<double> dts{4e-3, 2e-3, 1e-3, 5e-4};
  std::vector<int> y_modes{16, 34, 70};
  std::vector<int> x_modes{4, 8, 12};
  int n_fine = 16;
  int m_fine = 32;
  double dt_fine = 5e-5;
  double dt_x = 1e-3;
  double t_end = 0.5;
  int oversample = 2;
};

ConvergenceTable convergence_study(const ManufacturedCase& c, const ModelParams& p,
                                   const StudyPlan& plan);

struct ConvergenceCriteria {
  double order_t = 2.0;
  double order_t_band = 0.1;
  double x_error = 1e-10;
  double order_y_min = 2.0;
};

/// Clauses order_t_l2/linf, xerr_l2/linf and order_y_l2/linf.
VerificationReport check_convergence(const ConvergenceTable& table,
                                     const ConvergenceCriteria& criteria = {});

/// Least-squares slope of log(e) against log(h).
double fitted_order(const std::vector<double>& h, const std::vector<double>& e);

}  // namespace mgsim
