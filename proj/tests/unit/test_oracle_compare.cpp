#include <gtest/gtest.h>

#include "mgsim/oracle_compare.hpp"
#include "mgsim/presets.hpp"

using namespace mgsim;

TEST(OracleCompare, SmallCase) {
  ModelParams p;
  p.alpha = -0.1;
  p.beta = 0.5;
  OracleStudy study;
  study.sizes = {16, 32};
  study.t_end = 0.02;
  study.spectral_dt = 1e-4;
  const OracleComparison c = compare_with_fd(preset_field("small_data", Grid(8, 8)), p, study);
  ASSERT_EQ(c.max_error.size(), 2u);
  EXPECT_GT(c.max_error[0], c.max_error[1]);
  EXPECT_GT(c.min_order, 1.5);
  EXPECT_NEAR(c.constant, c.max_error[1] * 32 * 32, 1e-15);
  EXPECT_NE(c.report.find("cross_solver_order"), nullptr);
  EXPECT_FALSE(c.report.inconclusive);
}

TEST(OracleCompare, ZeroFieldHasZeroError) {
  OracleStudy study;
  study.sizes = {8, 16};
  study.t_end = 0.01;
  const OracleComparison c = compare_with_fd(preset_field("zero", Grid(4, 4)), ModelParams{}, study);
  for (double e : c.max_error) EXPECT_EQ(e, 0.0);
}

TEST(OracleCompare, RejectsShortSizeList) {
  OracleStudy study;
  study.sizes = {16};
  EXPECT_THROW(compare_with_fd(preset_field("zero", Grid(4, 4)), ModelParams{}, study),
               std::invalid_argument);
}
