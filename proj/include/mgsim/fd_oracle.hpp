#pragma once

// Second-order finite-difference solver for the same equation, kept
// independent of the spectral discretization (no transforms, no operator code).
// Used only as a cross-check.

#include <stdexcept>
#include <vector>

#include "mgsim/fields.hpp"
#include "mgsim/operators.hpp"

namespace mgsim::fd {

/// Nodes x_j = 2 pi j / nx (periodic), y_k = k / ny, k = 0..ny (walls at
/// k = 0 and k = ny).
struct FdGrid {
  int nx = 32;
  int ny = 32;

  /// Throws unless nx >= 8 is even and ny >= 8.
  void validate() const;
  double dx() const;
  double dy() const { return 1.0 / ny; }
  double x(int j) const { return dx() * j; }
  double y(int k) const { return dy() * k; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * (ny + 1); }
  std::size_t index(int j, int k) const {
    return static_cast<std::size_t>(k) * nx + static_cast<std::size_t>(j);
  }
};

struct FdState {
  double t = 0.0;
  FdGrid grid;
  std::vector<double> values;  // row k, column j at index(j, k)

  explicit FdState(const FdGrid& g) : grid(g), values(g.size(), 0.0) {}
  double& at(int j, int k) { return values[grid.index(j, k)]; }
  double at(int j, int k) const { return values[grid.index(j, k)]; }
};

/// Centered u_x, then cumulative trapezoid in y from y = 0.
std::vector<double> fd_T(const FdState& s);

/// -u u_x + Tu u_y + mu (u_xx + u_yy) + alpha u - beta Tu; zero on the walls.
std::vector<double> fd_rhs(const FdState& s, const ModelParams& p);

/// Largest dt the oracle accepts: safety * h^2 / (4 mu), h = min(dx, dy).
double fd_max_dt(const FdGrid& g, double mu, double safety = 0.5);

class FdInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Classical RK4 step; walls re-zeroed after every stage. Throws
/// std::invalid_argument if dt exceeds fd_max_dt(grid, mu, 1) and
/// FdInstability once the max norm exceeds 1e6.
FdState fd_step_rk4(const FdState& s, const ModelParams& p, double dt);

/// March to t_end with the largest admissible step of the given safety.
FdState fd_run(FdState s, const ModelParams& p, double t_end, double safety = 0.5);

}  // namespace mgsim::fd
