#include <gtest/gtest.h>

#include <cmath>

#include "mgsim/diagnostics.hpp"

using namespace mgsim;

namespace {

SpectralField sinx_sinpiy(const Grid& g) { return single_mode(g, 1, 1, cplx(0.0, -0.5)); }

}  // namespace

TEST(Diagnostics, NormsOfSingleMode) {
  const Grid g(3, 3);
  const SpectralField u = sinx_sinpiy(g);
  EXPECT_NEAR(l2_norm(u), std::sqrt(kPi / 2.0), 1e-15);
  EXPECT_NEAR(h1_seminorm(u), std::sqrt((1.0 + kPi * kPi) * kPi / 2.0), 1e-14);
  EXPECT_EQ(mean_value(u), 0.0);
  EXPECT_NEAR(wiener_norm(u, 0), 2.0, 1e-15);
  EXPECT_NEAR(wiener_norm(u, 1), 2.0, 1e-15);
  EXPECT_NEAR(wiener_norm(u, 2), 2.0, 1e-15);
  const SpectralField v = single_mode(g, 2, 3, 0.25);
  EXPECT_NEAR(wiener_norm(v, 0), 1.0, 1e-15);
  EXPECT_NEAR(wiener_norm(v, 1), 2.5, 1e-15);
  EXPECT_NEAR(wiener_norm(v, 2), 6.5, 1e-15);
}

TEST(Diagnostics, MeanOfXIndependentModes) {
  const Grid g(2, 4);
  SpectralField u(g);
  u(0, 1) = 1.0;  // mean of sin(pi y) is 2/pi
  u(0, 2) = 5.0;  // even modes integrate to zero
  EXPECT_NEAR(mean_value(u), 2.0 / kPi, 1e-15);
}

TEST(Diagnostics, InnerProduct) {
  const Grid g(3, 3);
  const SpectralField u = sinx_sinpiy(g);
  EXPECT_NEAR(inner_product(u, u), kPi / 2.0, 1e-15);
  EXPECT_EQ(inner_product(u, single_mode(g, 1, 2, 1.0)), 0.0);
}

TEST(Diagnostics, TuInnerMatchesQuadrature) {
  // u = sin x sin(pi y) + 0.5 cos x sin(2 pi y); Tu in closed form, (Tu, u)
  // by midpoint quadrature.
  const Grid g(3, 3);
  SpectralField u = sinx_sinpiy(g);
  u += single_mode(g, 1, 2, 0.25);
  OperatorWorkspace ws(g);
  const int K = 400;
  double s = 0.0;
  for (int i = 0; i < K; ++i) {
    const double x = 2.0 * kPi * (i + 0.5) / K;
    for (int k = 0; k < K; ++k) {
      const double y = (k + 0.5) / K;
      const double uu = std::sin(x) * std::sin(kPi * y) + 0.5 * std::cos(x) * std::sin(2 * kPi * y);
      const double tu = std::cos(x) * (1 - std::cos(kPi * y)) / kPi -
                        0.5 * std::sin(x) * (1 - std::cos(2 * kPi * y)) / (2 * kPi);
      s += tu * uu;
    }
  }
  s *= 2.0 * kPi / K / K;
  EXPECT_NEAR(tu_inner(u, ws), s, 1e-5);
  EXPECT_NEAR(tu_inner(u, ws), -4.0 / (3.0 * kPi), 1e-14);
}

TEST(Diagnostics, ExtremaOfSingleMode) {
  const Grid g(4, 4);
  ExtremaFinder f(g);
  const Extrema e = f.find(sinx_sinpiy(g));
  EXPECT_NEAR(e.max.value, 1.0, 1e-14);
  EXPECT_NEAR(e.max.x, kPi / 2, 1e-7);
  EXPECT_NEAR(e.max.y, 0.5, 1e-7);
  EXPECT_NEAR(e.min.value, -1.0, 1e-14);
  EXPECT_NEAR(e.min.x, 3 * kPi / 2, 1e-7);
}

TEST(Diagnostics, ExtremaBetweenNodes) {
  // Peak of sin(x + 0.123) sin(pi y) sits off every grid node.
  const Grid g(2, 2);
  const SpectralField u = single_mode(g, 1, 1, 0.5 * std::exp(cplx(0.0, 0.123 - kPi / 2)));
  ExtremaFinder f(g);
  const Extrema e = f.find(u);
  EXPECT_NEAR(e.max.value, 1.0, 1e-13);
  EXPECT_NEAR(e.max.x, kPi / 2 - 0.123, 1e-7);
}

TEST(Diagnostics, ExtremaOfZeroFieldAreZero) {
  const Grid g(2, 2);
  ExtremaFinder f(g);
  const Extrema e = f.find(SpectralField(g));
  EXPECT_EQ(e.max.value, 0.0);
  EXPECT_EQ(e.min.value, 0.0);
}

TEST(Diagnostics, FornbergWeights) {
  const std::vector<double> x3{-1.0, 0.0, 1.0};
  const auto w = derivative_weights(0.0, x3);
  EXPECT_NEAR(w[0], -0.5, 1e-15);
  EXPECT_NEAR(w[1], 0.0, 1e-15);
  EXPECT_NEAR(w[2], 0.5, 1e-15);
  const std::vector<double> x2{0.0, 1.0, 2.0};
  const auto b = derivative_weights(0.0, x2);
  EXPECT_NEAR(b[0], -1.5, 1e-15);
  EXPECT_NEAR(b[1], 2.0, 1e-15);
  EXPECT_NEAR(b[2], -0.5, 1e-15);
  // Exact for polynomials up to degree 6 on 7 uneven nodes.
  const std::vector<double> x7{0.0, 0.1, 0.25, 0.3, 0.5, 0.55, 0.8};
  const auto w7 = derivative_weights(0.3, x7);
  double d = 0.0;
  for (std::size_t i = 0; i < x7.size(); ++i) d += w7[i] * std::pow(x7[i], 6);
  EXPECT_NEAR(d, 6 * std::pow(0.3, 5), 1e-12);
}

TEST(Diagnostics, RecordFields) {
  const Grid g(4, 4);
  ModelParams p;
  const SolverState s{0.5, sinx_sinpiy(g), 3};
  const DiagnosticsRecord r = compute_record(s, p);
  EXPECT_EQ(r.t, 0.5);
  EXPECT_NEAR(r.l2, std::sqrt(kPi / 2.0), 1e-15);
  EXPECT_NEAR(r.linf, 1.0, 1e-13);
  EXPECT_NEAR(r.max_u, 1.0, 1e-13);
  EXPECT_NEAR(r.min_u, -1.0, 1e-13);
  EXPECT_NEAR(r.wiener0, 2.0, 1e-15);
  EXPECT_EQ(r.energy_residual, 0.0);
}

TEST(Diagnostics, ResidualFormulas) {
  ModelParams p;
  p.mu = 2.0;
  p.alpha = -0.5;
  p.beta = 0.25;
  DiagnosticsRecord r;
  r.l2 = 2.0;
  r.h1_dot = 3.0;
  r.tu_u = 4.0;
  // d + mu h1^2 - alpha l2^2 + beta (Tu, u) = 1 + 18 + 2 + 1
  EXPECT_NEAR(energy_residual(r, 1.0, p), 22.0, 1e-14);
  r.wiener0 = 0.1;
  r.wiener2 = 3.0;
  // max(0, d - 2 w0 w2 + mu w2) with d = -7: -7 - 0.6 + 6 < 0
  EXPECT_EQ(wiener_residual(r, -7.0, p), 0.0);
  EXPECT_NEAR(wiener_residual(r, 0.0, p), 5.4, 1e-14);
}

TEST(Diagnostics, LogAppendRequiresIncreasingTime) {
  TrajectoryLog log;
  DiagnosticsRecord r;
  r.t = 0.0;
  log.append(r);
  EXPECT_THROW(log.append(r), std::invalid_argument);
  r.t = 0.1;
  EXPECT_NO_THROW(log.append(r));
}

TEST(Diagnostics, FinalizeOnExactDecay) {
  // |u|^2 = e^{-2 c t} from the linear flow: the energy residual vanishes.
  const Grid g(2, 2);
  ModelParams p;
  p.nonlinear = false;
  TrajectoryLog log;
  log.params = p;
  const double c = 1.0 + kPi * kPi;
  DiagnosticsContext ctx(g, p);
  for (int k = 0; k <= 40; ++k) {
    const double t = 1e-3 * k;
    SolverState s{t, sinx_sinpiy(g), k};
    s.u *= std::exp(-c * t);
    log.append(ctx.compute(s));
  }
  log.finalize(7);
  double worst = 0.0;
  for (const auto& r : log.records) worst = std::max(worst, r.energy_residual);
  // one-sided 7-point ends: error ~ h^6 (2c)^7 / 7 |u0|^2 / 2 ~ 2e-10
  EXPECT_LT(worst, 1e-9 * log.records[0].l2 * log.records[0].l2);
}
