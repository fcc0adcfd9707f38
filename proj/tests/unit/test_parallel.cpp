#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "mgsim/parallel.hpp"

using namespace mgsim;

TEST(Parallel, ThreadCountRespectsEnvironment) {
  EXPECT_GE(thread_count(), 1);
  setenv("MGSIM_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3);
  setenv("MGSIM_THREADS", "garbage", 1);
  EXPECT_GE(thread_count(), 1);
  unsetenv("MGSIM_THREADS");
}

TEST(Parallel, CoversEveryIndexOnce) {
  setenv("MGSIM_THREADS", "4", 1);
  std::vector<int> hits(101, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  parallel_for(0, [](std::size_t) { FAIL(); });
  unsetenv("MGSIM_THREADS");
}

TEST(Parallel, RethrowsAfterJoin) {
  setenv("MGSIM_THREADS", "2", 1);
  std::atomic<int> done{0};
  EXPECT_THROW(parallel_for(10,
                            [&](std::size_t i) {
                              if (i == 7) throw std::runtime_error("boom");
                              ++done;
                            }),
               std::runtime_error);
  EXPECT_GE(done.load(), 5);
  unsetenv("MGSIM_THREADS");
}
