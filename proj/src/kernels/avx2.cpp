// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may run before dispatch has checked CPUID.

#include <immintrin.h>

#include <cmath>

#include "mgsim/kernels.hpp"

namespace mgsim::kernels {
namespace {

// [w0, w0, w1, w1] from two consecutive real weights.
inline __m256d pair_broadcast(const double* w) {
  const __m256d lo = _mm256_castpd128_pd256(_mm_loadu_pd(w));
  return _mm256_permute4x64_pd(lo, _MM_SHUFFLE(1, 1, 0, 0));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void mul_sub(const double* a, const double* b, const double* c, const double* d, double* out,
             std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cd = _mm256_mul_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(d + i));
    _mm256_storeu_pd(out + i, _mm256_fmsub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), cd));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i] - c[i] * d[i];
}

void combine3(const double* w0, const double* x, const double* w1, const double* y,
              const double* w2, const double* z, double* out, std::size_t n_complex) {
  const bool three = (w2 != nullptr && z != nullptr);
  std::size_t k = 0;
  for (; k + 2 <= n_complex; k += 2) {
    __m256d acc = _mm256_mul_pd(pair_broadcast(w0 + k), _mm256_loadu_pd(x + 2 * k));
    acc = _mm256_fmadd_pd(pair_broadcast(w1 + k), _mm256_loadu_pd(y + 2 * k), acc);
    if (three) acc = _mm256_fmadd_pd(pair_broadcast(w2 + k), _mm256_loadu_pd(z + 2 * k), acc);
    _mm256_storeu_pd(out + 2 * k, acc);
  }
  for (; k < n_complex; ++k) {
    for (int p = 0; p < 2; ++p) {
      double v = w0[k] * x[2 * k + p] + w1[k] * y[2 * k + p];
      if (three) v += w2[k] * z[2 * k + p];
      out[2 * k + p] = v;
    }
  }
}

double weighted_norm2(const double* w, const double* c, std::size_t n_complex) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n_complex; k += 4) {
    const __m256d a = _mm256_loadu_pd(c + 2 * k);
    const __m256d b = _mm256_loadu_pd(c + 2 * k + 4);
    acc0 = _mm256_fmadd_pd(pair_broadcast(w + k), _mm256_mul_pd(a, a), acc0);
    acc1 = _mm256_fmadd_pd(pair_broadcast(w + k + 2), _mm256_mul_pd(b, b), acc1);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n_complex; ++k) {
    total += w[k] * (c[2 * k] * c[2 * k] + c[2 * k + 1] * c[2 * k + 1]);
  }
  return total;
}

double weighted_abs(const double* w, const double* c, std::size_t n_complex) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n_complex; k += 4) {
    const __m256d a = _mm256_loadu_pd(c + 2 * k);      // c0 c1
    const __m256d b = _mm256_loadu_pd(c + 2 * k + 4);  // c2 c3
    // hadd -> [|c0|^2, |c2|^2, |c1|^2, |c3|^2]
    const __m256d mag2 = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    const __m256d wv = _mm256_permute4x64_pd(_mm256_loadu_pd(w + k), _MM_SHUFFLE(3, 1, 2, 0));
    acc = _mm256_fmadd_pd(wv, _mm256_sqrt_pd(mag2), acc);
  }
  double total = hsum(acc);
  for (; k < n_complex; ++k) {
    total += w[k] * std::sqrt(c[2 * k] * c[2 * k] + c[2 * k + 1] * c[2 * k + 1]);
  }
  return total;
}

MinMax minmax(const double* v, std::size_t n) {
  MinMax r{0.0, 0, 0.0, 0};
  if (n == 0) return r;
  if (n < 8) {
    return scalar_table().minmax(v, n);
  }
  __m256d vmin = _mm256_loadu_pd(v);
  __m256d vmax = vmin;
  __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d imin = idx;
  __m256d imax = idx;
  const __m256d step = _mm256_set1_pd(4.0);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    idx = _mm256_add_pd(idx, step);
    const __m256d x = _mm256_loadu_pd(v + i);
    const __m256d lt = _mm256_cmp_pd(x, vmin, _CMP_LT_OQ);
    const __m256d gt = _mm256_cmp_pd(x, vmax, _CMP_GT_OQ);
    vmin = _mm256_blendv_pd(vmin, x, lt);
    imin = _mm256_blendv_pd(imin, idx, lt);
    vmax = _mm256_blendv_pd(vmax, x, gt);
    imax = _mm256_blendv_pd(imax, idx, gt);
  }
  alignas(32) double mn[4], mx[4], in[4], ix[4];
  _mm256_store_pd(mn, vmin);
  _mm256_store_pd(mx, vmax);
  _mm256_store_pd(in, imin);
  _mm256_store_pd(ix, imax);
  r.min = mn[0];
  r.argmin = static_cast<std::size_t>(in[0]);
  r.max = mx[0];
  r.argmax = static_cast<std::size_t>(ix[0]);
  for (int l = 1; l < 4; ++l) {
    const auto il = static_cast<std::size_t>(in[l]);
    const auto xl = static_cast<std::size_t>(ix[l]);
    if (mn[l] < r.min || (mn[l] == r.min && il < r.argmin)) {
      r.min = mn[l];
      r.argmin = il;
    }
    if (mx[l] > r.max || (mx[l] == r.max && xl < r.argmax)) {
      r.max = mx[l];
      r.argmax = xl;
    }
  }
  for (; i < n; ++i) {
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
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4) {
      acc0 = _mm256_fmadd_pd(pair_broadcast(row + j), _mm256_loadu_pd(in + 2 * j), acc0);
      acc1 = _mm256_fmadd_pd(pair_broadcast(row + j + 2), _mm256_loadu_pd(in + 2 * j + 4), acc1);
    }
    for (; j + 2 <= cols; j += 2) {
      acc0 = _mm256_fmadd_pd(pair_broadcast(row + j), _mm256_loadu_pd(in + 2 * j), acc0);
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    if (j < cols) {
      sum = _mm_fmadd_pd(_mm_set1_pd(row[j]), _mm_loadu_pd(in + 2 * j), sum);
    }
    _mm_storeu_pd(out + 2 * r, sum);
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::Avx2,     "avx2",  &mul_sub, &combine3, &weighted_norm2,
                                 &weighted_abs, &minmax, &real_matvec};
  return table;
}

}  // namespace mgsim::kernels
