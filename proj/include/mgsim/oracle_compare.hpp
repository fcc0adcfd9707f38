#pragma once

#include <vector>

#include "mgsim/fields.hpp"
#include "mgsim/operators.hpp"
#include "mgsim/verification.hpp"

namespace mgsim {

struct OracleStudy {
  std::vector<int> sizes{32, 64, 128};
  double t_end = 0.1;
  /// Step of the spectral reference run.
  double spectral_dt = 1e-4;
  /// Fraction of the explicit diffusive limit used by the FD runs.
  double fd_safety = 0.5;
  double min_order = 1.8;
};

struct OracleComparison {
  std::vector<int> sizes;
  /// Max over FD nodes of |u_fd(T) - u_spectral(T)|.
  std::vector<double> max_error;
  /// Smallest order between consecutive sizes, and the least-squares slope.
  double min_order = 0.0;
  double fitted_order = 0.0;
  /// max_error * n^2 on the finest grid (error ~ C h^2 with h = 1/n).
  double constant = 0.0;
  /// Clause cross_solver_order (min_order >= study.min_order).
  VerificationReport report;
};

/// Run the FD oracle from the samples of u0 on each size^2 grid and compare
/// with the spectral solution sampled on the same nodes. FD runs go in
/// parallel. Blow-up or FD instability marks the report inconclusive.
OracleComparison compare_with_fd(const SpectralField& u0, const ModelParams& p,
                                 const OracleStudy& study = {});

}  // namespace mgsim
