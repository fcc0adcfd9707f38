#pragma once

// Data-parallel inner loops of the solver. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2/FMA variant; the variant is chosen
// once at startup from CPUID (override with MGSIM_SIMD=scalar|avx2).
//
// Complex arrays are passed as interleaved (re, im) doubles; "n_complex"
// counts complex elements.

#include <cstddef>
#include <string_view>

namespace mgsim::kernels {

enum class Isa { Scalar, Avx2 };

struct MinMax {
  double min;
  std::size_t argmin;
  double max;
  std::size_t argmax;
};

struct KernelTable {
  Isa isa;
  std::string_view name;

  /// out[i] = a[i] * b[i] - c[i] * d[i]
  void (*mul_sub)(const double* a, const double* b, const double* c, const double* d, double* out,
                  std::size_t n);

  /// out_k = w0[k] x_k + w1[k] y_k + w2[k] z_k with real per-element weights.
  /// w2/z may both be null.
  void (*combine3)(const double* w0, const double* x, const double* w1, const double* y,
                   const double* w2, const double* z, double* out, std::size_t n_complex);

  /// sum_k w[k] |c_k|^2
  double (*weighted_norm2)(const double* w, const double* c, std::size_t n_complex);

  /// sum_k w[k] |c_k|
  double (*weighted_abs)(const double* w, const double* c, std::size_t n_complex);

  /// Extremes and their first occurrence.
  MinMax (*minmax)(const double* v, std::size_t n);

  /// out_r = sum_j P[r * cols + j] in_j: real row-major matrix times complex vector.
  void (*real_matvec)(const double* p, std::size_t rows, std::size_t cols, const double* in,
                      double* out);
};

const KernelTable& scalar_table();

/// Null when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

/// The table selected for this process.
const KernelTable& active();

}  // namespace mgsim::kernels
