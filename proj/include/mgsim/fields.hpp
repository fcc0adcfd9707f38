#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mgsim/grid.hpp"

namespace mgsim {

using cplx = std::complex<double>;

/// Coefficients u_hat(n, m) of u(x,y) = sum_n sum_m u_hat(n,m) e^{inx} sin(m pi y).
///
/// Every solver state represents a real function, so coef(-n, m) must equal
/// conj(coef(n, m)); operators only ever compute the n >= 0 half and mirror it.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int n_modes_x() const { return grid_.n_modes_x(); }
  int n_modes_y() const { return grid_.n_modes_y(); }

  cplx& operator()(int n, int m) { return coef_[grid_.index(n, m)]; }
  const cplx& operator()(int n, int m) const { return coef_[grid_.index(n, m)]; }

  std::span<cplx> coefficients() { return coef_; }
  std::span<const cplx> coefficients() const { return coef_; }
  /// The M coefficients of wavenumber n, m = 1..M.
  std::span<cplx> column(int n) {
    return std::span<cplx>(coef_).subspan(grid_.index(n, 1), static_cast<std::size_t>(n_modes_y()));
  }
  std::span<const cplx> column(int n) const {
    return std::span<const cplx>(coef_).subspan(grid_.index(n, 1),
                                                static_cast<std::size_t>(n_modes_y()));
  }

  /// max |coef(-n,m) - conj(coef(n,m))| relative to max |coef| (0 for the zero field).
  double hermitian_defect() const;
  /// Rebuild the n < 0 half from n > 0 and drop the imaginary part of n = 0.
  void enforce_hermitian();

  bool all_finite() const;
  double max_abs() const;
  void set_zero();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double factor);

 private:
  Grid grid_;
  std::vector<cplx> coef_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double factor, SpectralField a);

/// Field with a single real mode: value at (n, m) and its conjugate at (-n, m).
SpectralField single_mode(const Grid& grid, int n, int m, cplx value);

/// Which y rows a physical field carries.
enum class YNodes {
  Interior,  ///< k = 1..ny
  Closed,    ///< k = 0..ny+1, walls included
};

/// Real samples on the collocation grid, stored row by row (row = one y node,
/// contiguous in x).
class PhysicalField {
 public:
  PhysicalField(const Grid& grid, YNodes nodes);

  const Grid& grid() const { return grid_; }
  YNodes nodes() const { return nodes_; }
  int nx() const { return grid_.nx(); }
  int rows() const { return rows_; }

  /// Grid index k of storage row r.
  int y_index(int row) const { return nodes_ == YNodes::Interior ? row + 1 : row; }
  double y_of_row(int row) const { return grid_.y_node(y_index(row)); }
  double x_of_col(int j) const { return grid_.x_node(j); }

  double& at(int j, int row) { return values_[static_cast<std::size_t>(row) * nx() + j]; }
  double at(int j, int row) const { return values_[static_cast<std::size_t>(row) * nx() + j]; }
  std::span<double> row(int r) {
    return std::span<double>(values_).subspan(static_cast<std::size_t>(r) * nx(), nx());
  }
  std::span<const double> row(int r) const {
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(r) * nx(), nx());
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool all_finite() const;
  double max_abs() const;

 private:
  Grid grid_;
  YNodes nodes_;
  int rows_;
  std::vector<double> values_;
};

}  // namespace mgsim
