#include "mgsim/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgsim {

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coef_(grid.coef_count()) {}

double SpectralField::hermitian_defect() const {
  const double scale = max_abs();
  if (scale == 0.0) return 0.0;
  double defect = 0.0;
  const int nmax = n_modes_x();
  for (int n = 0; n <= nmax; ++n) {
    for (int m = 1; m <= n_modes_y(); ++m) {
      defect = std::max(defect, std::abs((*this)(-n, m) - std::conj((*this)(n, m))));
    }
  }
  return defect / scale;
}

void SpectralField::enforce_hermitian() {
  for (int m = 1; m <= n_modes_y(); ++m) {
    (*this)(0, m) = cplx((*this)(0, m).real(), 0.0);
  }
  for (int n = 1; n <= n_modes_x(); ++n) {
    for (int m = 1; m <= n_modes_y(); ++m) {
      (*this)(-n, m) = std::conj((*this)(n, m));
    }
  }
}

bool SpectralField::all_finite() const {
  return std::all_of(coef_.begin(), coef_.end(),
                     [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double SpectralField::max_abs() const {
  double out = 0.0;
  for (const cplx& c : coef_) out = std::max(out, std::abs(c));
  return out;
}

void SpectralField::set_zero() { std::fill(coef_.begin(), coef_.end(), cplx{}); }

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += other.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= other.coef_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double factor) {
  for (cplx& c : coef_) c *= factor;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double factor, SpectralField a) { return a *= factor; }

SpectralField single_mode(const Grid& grid, int n, int m, cplx value) {
  if (std::abs(n) > grid.n_modes_x() || m < 1 || m > grid.n_modes_y()) {
    throw std::invalid_argument("single_mode: mode outside truncation");
  }
  SpectralField out(grid);
  if (n == 0) {
    out(0, m) = cplx(value.real(), 0.0);
  } else {
    out(n, m) = value;
    out(-n, m) = std::conj(value);
  }
  return out;
}

PhysicalField::PhysicalField(const Grid& grid, YNodes nodes)
    : grid_(grid),
      nodes_(nodes),
      rows_(nodes == YNodes::Interior ? grid.ny() : grid.ny() + 2),
      values_(static_cast<std::size_t>(rows_) * grid.nx()) {}

bool PhysicalField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double PhysicalField::max_abs() const {
  double out = 0.0;
  for (double v : values_) out = std::max(out, std::abs(v));
  return out;
}

}  // namespace mgsim
