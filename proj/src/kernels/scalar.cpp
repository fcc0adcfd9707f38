#include <cmath>

#include "mgsim/kernels.hpp"

namespace mgsim::kernels {
namespace {

void mul_sub(const double* a, const double* b, const double* c, const double* d, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] - c[i] * d[i];
}

void combine3(const double* w0, const double* x, const double* w1, const double* y,
              const double* w2, const double* z, double* out, std::size_t n_complex) {
  if (w2 == nullptr || z == nullptr) {
    for (std::size_t k = 0; k < n_complex; ++k) {
      out[2 * k] = w0[k] * x[2 * k] + w1[k] * y[2 * k];
      out[2 * k + 1] = w0[k] * x[2 * k + 1] + w1[k] * y[2 * k + 1];
    }
    return;
  }
  for (std::size_t k = 0; k < n_complex; ++k) {
    out[2 * k] = w0[k] * x[2 * k] + w1[k] * y[2 * k] + w2[k] * z[2 * k];
    out[2 * k + 1] = w0[k] * x[2 * k + 1] + w1[k] * y[2 * k + 1] + w2[k] * z[2 * k + 1];
  }
}

double weighted_norm2(const double* w, const double* c, std::size_t n_complex) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n_complex; ++k) {
    acc += w[k] * (c[2 * k] * c[2 * k] + c[2 * k + 1] * c[2 * k + 1]);
  }
  return acc;
}

double weighted_abs(const double* w, const double* c, std::size_t n_complex) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n_complex; ++k) {
    acc += w[k] * std::sqrt(c[2 * k] * c[2 * k] + c[2 * k + 1] * c[2 * k + 1]);
  }
  return acc;
}

MinMax minmax(const double* v, std::size_t n) {
  MinMax r{0.0, 0, 0.0, 0};
  if (n == 0) return r;
  r.min = r.max = v[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] < r.min) {
      r.min = v[i];
      r.argmin = i;
    }
    if (v[i] > r.max) {
      r.max = v[i];
      r.argmax = i;
    }
  }
  return r;
}

void real_matvec(const double* p, std::size_t rows, std::size_t cols, const double* in,
                 double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = p + r * cols;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      re += row[j] * in[2 * j];
      im += row[j] * in[2 * j + 1];
    }
    out[2 * r] = re;
    out[2 * r + 1] = im;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, "scalar",     &mul_sub, &combine3, &weighted_norm2,
                                 &weighted_abs, &minmax, &real_matvec};
  return table;
}

}  // namespace mgsim::kernels
