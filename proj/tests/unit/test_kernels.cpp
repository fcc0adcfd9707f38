#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mgsim/kernels.hpp"

using namespace mgsim::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Lengths that exercise the vector body and every tail size.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 63, 64, 65, 1001};

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd_ = avx2_table();
    if (!simd_) GTEST_SKIP() << "no AVX2 variant in this build or CPU";
  }
  const KernelTable& ref_ = scalar_table();
  const KernelTable* simd_ = nullptr;
};

}  // namespace

TEST(Kernels, ScalarReference) {
  const auto& k = scalar_table();
  const double a[] = {1, 2}, b[] = {3, 4}, c[] = {5, 6}, d[] = {7, 8};
  double out[2];
  k.mul_sub(a, b, c, d, out, 2);
  EXPECT_EQ(out[0], 3.0 - 35.0);
  EXPECT_EQ(out[1], 8.0 - 48.0);
  const double w[] = {2.0};
  const double z[] = {3.0, -4.0};
  EXPECT_EQ(k.weighted_norm2(w, z, 1), 50.0);
  EXPECT_EQ(k.weighted_abs(w, z, 1), 10.0);
  const double v[] = {1.0, -3.0, 5.0, 5.0, -3.0};
  const MinMax mm = k.minmax(v, 5);
  EXPECT_EQ(mm.min, -3.0);
  EXPECT_EQ(mm.argmin, 1u);
  EXPECT_EQ(mm.max, 5.0);
  EXPECT_EQ(mm.argmax, 2u);
  const double p[] = {1.0, 2.0, 0.5, -1.0};
  const double in[] = {1.0, 1.0, 2.0, -1.0};
  double mv[4];
  k.real_matvec(p, 2, 2, in, mv);
  EXPECT_EQ(mv[0], 5.0);
  EXPECT_EQ(mv[1], -1.0);
  EXPECT_EQ(mv[2], -1.5);
  EXPECT_EQ(mv[3], 1.5);
}

TEST(Kernels, ActiveTableIsKnown) {
  const auto& k = active();
  EXPECT_TRUE(k.isa == Isa::Scalar || k.isa == Isa::Avx2);
  EXPECT_FALSE(k.name.empty());
}

TEST_F(KernelEquivalence, MulSub) {
  for (std::size_t n : kSizes) {
    auto a = random_vec(n, 1), b = random_vec(n, 2), c = random_vec(n, 3), d = random_vec(n, 4);
    std::vector<double> r(n), s(n);
    ref_.mul_sub(a.data(), b.data(), c.data(), d.data(), r.data(), n);
    simd_->mul_sub(a.data(), b.data(), c.data(), d.data(), s.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s[i], r[i], 1e-15 * (1 + std::abs(r[i])));
  }
}

TEST_F(KernelEquivalence, Combine3) {
  for (std::size_t n : kSizes) {
    auto w0 = random_vec(n, 5), w1 = random_vec(n, 6), w2 = random_vec(n, 7);
    auto x = random_vec(2 * n, 8), y = random_vec(2 * n, 9), z = random_vec(2 * n, 10);
    std::vector<double> r(2 * n), s(2 * n);
    ref_.combine3(w0.data(), x.data(), w1.data(), y.data(), w2.data(), z.data(), r.data(), n);
    simd_->combine3(w0.data(), x.data(), w1.data(), y.data(), w2.data(), z.data(), s.data(), n);
    for (std::size_t i = 0; i < 2 * n; ++i) EXPECT_NEAR(s[i], r[i], 1e-14);
    ref_.combine3(w0.data(), x.data(), w1.data(), y.data(), nullptr, nullptr, r.data(), n);
    simd_->combine3(w0.data(), x.data(), w1.data(), y.data(), nullptr, nullptr, s.data(), n);
    for (std::size_t i = 0; i < 2 * n; ++i) EXPECT_NEAR(s[i], r[i], 1e-14);
  }
}

TEST_F(KernelEquivalence, Reductions) {
  for (std::size_t n : kSizes) {
    auto w = random_vec(n, 11), c = random_vec(2 * n, 12);
    for (auto& x : w) x = std::abs(x);
    const double r2 = ref_.weighted_norm2(w.data(), c.data(), n);
    const double s2 = simd_->weighted_norm2(w.data(), c.data(), n);
    EXPECT_NEAR(s2, r2, 1e-13 * (1 + r2));
    const double r1 = ref_.weighted_abs(w.data(), c.data(), n);
    const double s1 = simd_->weighted_abs(w.data(), c.data(), n);
    EXPECT_NEAR(s1, r1, 1e-13 * (1 + r1));
  }
}

TEST_F(KernelEquivalence, MinMaxIsExact) {
  for (std::size_t n : kSizes) {
    if (n == 0) continue;
    auto v = random_vec(n, 13);
    if (n > 6) v[n / 2] = v[n / 3];  // ties resolve to the first index
    const MinMax r = ref_.minmax(v.data(), n);
    const MinMax s = simd_->minmax(v.data(), n);
    EXPECT_EQ(s.min, r.min);
    EXPECT_EQ(s.max, r.max);
    EXPECT_EQ(s.argmin, r.argmin);
    EXPECT_EQ(s.argmax, r.argmax);
  }
}

TEST_F(KernelEquivalence, RealMatvec) {
  for (std::size_t rows : {1u, 3u, 8u, 33u}) {
    for (std::size_t cols : {1u, 2u, 5u, 9u, 66u}) {
      auto p = random_vec(rows * cols, 14), in = random_vec(2 * cols, 15);
      std::vector<double> r(2 * rows), s(2 * rows);
      ref_.real_matvec(p.data(), rows, cols, in.data(), r.data());
      simd_->real_matvec(p.data(), rows, cols, in.data(), s.data());
      for (std::size_t i = 0; i < 2 * rows; ++i) EXPECT_NEAR(s[i], r[i], 1e-13);
    }
  }
}
