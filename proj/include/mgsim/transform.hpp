#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mgsim/fields.hpp"

namespace mgsim {

/// y-basis of a column spectrum.
enum class YBasis {
  Sine,    ///< entry l is the coefficient of sin((l+1) pi y)
  Cosine,  ///< entry l is the coefficient of cos(l pi y)
};

/// y-spectra of the wavenumbers n = 0..N, one row of `width` entries per n.
/// The n < 0 half of a real field is implied by conjugation.
class ColumnSpectra {
 public:
  ColumnSpectra(int n_max, int width);

  int n_max() const { return n_max_; }
  int width() const { return width_; }
  cplx& operator()(int n, int l) { return data_[static_cast<std::size_t>(n) * width_ + l]; }
  const cplx& operator()(int n, int l) const {
    return data_[static_cast<std::size_t>(n) * width_ + l];
  }
  std::span<cplx> row(int n) {
    return std::span<cplx>(data_).subspan(static_cast<std::size_t>(n) * width_, width_);
  }
  std::span<const cplx> row(int n) const {
    return std::span<const cplx>(data_).subspan(static_cast<std::size_t>(n) * width_, width_);
  }
  void set_zero();

 private:
  int n_max_;
  int width_;
  std::vector<cplx> data_;
};

/// Transform engine for one grid: real FFTs in x, type-I sine/cosine
/// transforms in y. Owns its plans and scratch buffers, so one instance must
/// not be used by two threads at once; instances are cheap to create per
/// thread.
class SpectralTransform {
 public:
  explicit SpectralTransform(const Grid& grid);
  ~SpectralTransform();
  SpectralTransform(SpectralTransform&&) noexcept;
  SpectralTransform& operator=(SpectralTransform&&) noexcept;
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const Grid& grid() const;

  /// Evaluate sum_n sum_l cols(n,l) e^{inx} phi_l(y) at the rows of `out`.
  /// Wall rows of a sine synthesis are exactly zero.
  void synthesize(const ColumnSpectra& cols, YBasis basis, PhysicalField& out);

  /// Discrete sine coefficients (DST-I quadrature over the interior rows).
  /// Exact for fields that are finite mode sums within the truncation.
  void analyze_sine(const PhysicalField& field, SpectralField& out);

  /// Cosine coefficients j = 0..cols.width()-1 from samples on the closed
  /// rows (DCT-I with wall nodes). Exact for cosine polynomials of degree <= ny.
  void analyze_cosine(const PhysicalField& field, ColumnSpectra& cols);

  PhysicalField inverse(const SpectralField& s, YNodes nodes = YNodes::Interior);
  SpectralField forward(const PhysicalField& p);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Copy the n >= 0 half of s into sine column spectra of width M.
void sine_columns(const SpectralField& s, ColumnSpectra& out);

/// Physical values on the interior collocation nodes. Rejects coefficient
/// arrays whose Hermitian defect exceeds 1e-12.
PhysicalField inverse_transform(const SpectralField& s);

/// Coefficients of a physical field (interior rows; wall rows of a closed
/// field are ignored).
SpectralField forward_transform(const PhysicalField& p);

/// Zero every mode with |n| > n_cut or m > m_cut.
SpectralField project_modes(const SpectralField& s, int n_cut, int m_cut);

/// Direct double-sum evaluation at one point. O(N M); meant for tests and
/// for sampling onto foreign grids.
double evaluate_point(const SpectralField& s, double x, double y);

/// Direct evaluation on the tensor grid xs (inner, contiguous) by ys (outer).
std::vector<double> evaluate_on(const SpectralField& s, std::span<const double> xs,
                                std::span<const double> ys);

}  // namespace mgsim
