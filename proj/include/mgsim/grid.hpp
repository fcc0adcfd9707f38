#pragma once

#include <cstddef>
#include <numbers>

namespace mgsim {

inline constexpr double kPi = std::numbers::pi;

/// Truncation and collocation layout for the channel T x (0,1).
///
/// Spectral modes: n in [-N, N] (complex exponentials in x), m in [1, M]
/// (sin(m pi y)). Physical nodes: x_j = 2 pi j / nx, j = 0..nx-1, and
/// y_k = k / (ny + 1). Interior rows are k = 1..ny; the closed layout adds
/// the two walls k = 0 and k = ny + 1.
///
/// nx is the smallest 2,3,5-smooth size >= 2 * oversample * (2N + 1) (never
/// below 3(2N + 1)/2), and ny + 1 is the smallest 2,3,5-smooth size
/// >= oversample * (M + 1) + 1. With oversample >= 2 every
/// quadratic product of resolved modes is represented exactly on the closed
/// grid, which is what the nonlinear term relies on.
class Grid {
 public:
  Grid(int n_modes_x, int n_modes_y, int oversample = 2);

  int n_modes_x() const { return n_modes_x_; }
  int n_modes_y() const { return n_modes_y_; }
  int oversample() const { return oversample_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  /// Number of x wavenumbers, 2N + 1.
  int n_count() const { return 2 * n_modes_x_ + 1; }
  std::size_t coef_count() const {
    return static_cast<std::size_t>(n_count()) * static_cast<std::size_t>(n_modes_y_);
  }
  /// Row-major (n ascending from -N, then m ascending) storage index.
  std::size_t index(int n, int m) const {
    return static_cast<std::size_t>(n + n_modes_x_) * static_cast<std::size_t>(n_modes_y_) +
           static_cast<std::size_t>(m - 1);
  }

  double dx() const { return 2.0 * kPi / nx_; }
  double dy() const { return 1.0 / (ny_ + 1); }
  double x_node(int j) const { return dx() * j; }
  /// k = 0 and k = ny + 1 are the walls.
  double y_node(int k) const { return dy() * k; }

  /// Same truncation, different physical refinement.
  Grid with_oversample(int oversample) const { return Grid(n_modes_x_, n_modes_y_, oversample); }

  bool operator==(const Grid&) const = default;

 private:
  int n_modes_x_;
  int n_modes_y_;
  int oversample_;
  int nx_;
  int ny_;
};

/// Smallest integer >= n whose only prime factors are 2, 3 and 5.
int next_smooth_size(int n);

}  // namespace mgsim
