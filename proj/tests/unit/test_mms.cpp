#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mgsim/mms.hpp"
#include "mgsim/transform.hpp"

using namespace mgsim;

namespace {

ModelParams params(double mu, double alpha, double beta) {
  ModelParams p;
  p.mu = mu;
  p.alpha = alpha;
  p.beta = beta;
  return p;
}

struct Frozen {
  double x, y, t, value;
};

}  // namespace

// Values from symbolic differentiation of u_e (T by symbolic integration),
// evaluated to 20 digits.
TEST(Mms, ForcingMatchesSymbolicDerivation) {
  {
    const ManufacturedCase c{0.1, 1.0, 1, 1};
    const ManufacturedForcing f(c, params(1.0, -0.1, 0.5), Grid(4, 4));
    const Frozen pts[] = {{0.7, 0.3, 0.2, 0.43088131461134117918},
                          {2.1, 0.85, 0.5, 0.22472288248029683309},
                          {5.0, 0.5, 1.0, -0.35040355416424414991},
                          {1.3, 1.0, 0.3, 0.0091370150644456557970}};
    for (const auto& p : pts) EXPECT_NEAR(f.evaluate(p.x, p.y, p.t), p.value, 1e-14);
  }
  {
    const ManufacturedCase c{0.3, 2.0, 2, 3};
    const ManufacturedForcing f(c, params(0.5, 0.0, -0.25), Grid(4, 4));
    const Frozen pts[] = {{0.7, 0.3, 0.2, 2.7426651054283062785},
                          {2.1, 0.85, 0.5, -4.2041732610121927471},
                          {5.0, 0.5, 1.0, 0.98429254387408979675},
                          {1.3, 1.0, 0.3, -0.032927281654278965040}};
    for (const auto& p : pts) EXPECT_NEAR(f.evaluate(p.x, p.y, p.t), p.value, 1e-13);
  }
}

TEST(Mms, ZeroAmplitudeGivesZeroForcing) {
  const ManufacturedCase c{0.0, 1.0, 1, 1};
  const Grid g(4, 4);
  const ManufacturedForcing f(c, params(1.0, -0.1, 0.5), g);
  EXPECT_EQ(f.evaluate(0.3, 0.4, 0.5), 0.0);
  OperatorWorkspace ws(g);
  SpectralField out(g);
  f.accumulate(0.5, ws, out);
  EXPECT_EQ(out.max_abs(), 0.0);
}

TEST(Mms, LinearPartCancels) {
  const double lambda = 1.0 + kPi * kPi;
  const ManufacturedCase c{1.0, lambda, 1, 1};
  const ManufacturedForcing f(c, params(1.0, 0.0, 0.0), Grid(4, 4));
  for (double x : {0.2, 1.9, 4.4}) {
    for (double y : {0.1, 0.5, 0.9}) {
      const double t = 0.05;
      const double expected = 0.5 * std::exp(-2 * lambda * t) * std::sin(2 * x) * (1 - std::cos(kPi * y));
      EXPECT_NEAR(f.evaluate(x, y, t), expected, 1e-14);
    }
  }
}

TEST(Mms, ExactSolutionVanishesOnWalls) {
  const ManufacturedCase c{0.7, 0.3, 2, 3};
  for (double x : {0.0, 1.0, 3.3}) {
    for (double t : {0.0, 0.4}) {
      EXPECT_NEAR(c.exact(x, 0.0, t), 0.0, 1e-16);
      EXPECT_NEAR(c.exact(x, 1.0, t), 0.0, 1e-15);
      EXPECT_NEAR(c.exact(x, 0.0, t), c.exact(x + 2 * kPi, 0.0, t), 1e-15);
    }
  }
  const SpectralField u = c.exact_field(Grid(4, 4), 0.4);
  EXPECT_NEAR(evaluate_point(u, 0.9, 0.35), c.exact(0.9, 0.35, 0.4), 1e-15);
  EXPECT_THROW(c.exact_field(Grid(1, 4), 0.0), std::invalid_argument);
}

TEST(Mms, SpectralForcingIsQuadratureOfPointwiseForm) {
  const ManufacturedCase c{0.2, 1.5, 1, 2};
  const Grid g(6, 10);
  const ManufacturedForcing f(c, params(0.8, -0.2, 0.4), g);
  const double t = 0.3;
  PhysicalField p(g, YNodes::Interior);
  for (int r = 0; r < p.rows(); ++r) {
    for (int j = 0; j < p.nx(); ++j) p.at(j, r) = f.evaluate(p.x_of_col(j), p.y_of_row(r), t);
  }
  const SpectralField expected = forward_transform(p);
  OperatorWorkspace ws(g);
  SpectralField out(g);
  f.accumulate(t, ws, out);
  for (std::size_t i = 0; i < out.coefficients().size(); ++i) {
    EXPECT_NEAR(std::abs(out.coefficients()[i] - expected.coefficients()[i]), 0.0, 1e-14);
  }
}

TEST(Mms, CaseValidation) {
  EXPECT_THROW((ManufacturedCase{0.1, 1.0, 0, 1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((ManufacturedCase{}.validate()));
}

TEST(Mms, FittedOrder) {
  const std::vector<double> h{0.4, 0.2, 0.1};
  const std::vector<double> e{0.16 * 3, 0.04 * 3, 0.01 * 3};
  EXPECT_NEAR(fitted_order(h, e), 2.0, 1e-14);
  EXPECT_THROW(fitted_order({1.0}, {1.0}), std::invalid_argument);
}

TEST(Mms, SmallStudy) {
  StudyPlan plan;
  plan.dts = {2e-3, 1e-3, 5e-4};
  plan.y_modes = {4, 6, 8};
  plan.x_modes = {2, 3, 4};
  plan.n_fine = 4;
  plan.m_fine = 8;
  plan.dt_fine = 1e-3;
  plan.dt_x = 1e-3;
  plan.t_end = 0.05;
  const ManufacturedCase c{0.1, 1.0, 1, 1};
  const ConvergenceTable t = convergence_study(c, params(1.0, -0.1, 0.5), plan);
  EXPECT_EQ(t.rows.size(), 9u);
  EXPECT_NEAR(t.order_t_l2, 2.0, 0.15);
  EXPECT_GT(t.order_y_l2, 1.5);
  std::ostringstream os;
  t.write_csv(os);
  const std::string csv = os.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "resolution_x,resolution_y,dt,err_l2,err_linf");
  EXPECT_NE(csv.find("\norder_t,,,"), std::string::npos);
  EXPECT_NE(csv.find("\norder_y,,,"), std::string::npos);
  EXPECT_NE(csv.find("\nxerr_max,,,"), std::string::npos);
  const VerificationReport rep = check_convergence(t);
  EXPECT_NE(rep.find("order_t_l2"), nullptr);
  EXPECT_NE(rep.find("xerr_linf"), nullptr);
  EXPECT_THROW(convergence_study(c, params(1.0, 0.0, 0.0), StudyPlan{{1e-3}, {4, 6, 8}, {2, 3, 4}}),
               std::invalid_argument);
}

TEST(Mms, ZeroAmplitudeStudyHasNoError) {
  StudyPlan plan;
  plan.dts = {4e-3, 2e-3, 1e-3};
  plan.y_modes = {2, 3, 4};
  plan.x_modes = {2, 3, 4};
  plan.n_fine = 4;
  plan.m_fine = 4;
  plan.dt_fine = 2e-3;
  plan.dt_x = 2e-3;
  plan.t_end = 0.02;
  const ConvergenceTable t = convergence_study(ManufacturedCase{0.0, 1.0, 1, 1}, params(1, 0, 0), plan);
  for (const auto& r : t.rows) {
    EXPECT_LE(r.err_l2, 1e-13);
    EXPECT_LE(r.err_linf, 1e-13);
  }
}

TEST(Mms, CheckConvergenceClauses) {
  ConvergenceTable t;
  t.order_t_l2 = 2.05;
  t.order_t_linf = 1.85;
  t.xerr_l2 = 1e-12;
  t.xerr_linf = 1e-9;
  t.order_y_l2 = 2.1;
  t.order_y_linf = 1.9;
  const VerificationReport r = check_convergence(t);
  EXPECT_EQ(r.find("order_t_l2")->status, ClauseStatus::Pass);
  EXPECT_EQ(r.find("order_t_linf")->status, ClauseStatus::Fail);
  EXPECT_EQ(r.find("xerr_l2")->status, ClauseStatus::Pass);
  EXPECT_EQ(r.find("xerr_linf")->status, ClauseStatus::Fail);
  EXPECT_EQ(r.find("order_y_l2")->status, ClauseStatus::Pass);
  EXPECT_EQ(r.find("order_y_linf")->status, ClauseStatus::Fail);
}
