#include <stdexcept>

#include <gtest/gtest.h>

#include "favard/kernels.hpp"

using namespace favard;

TEST(MapIndices, SerialAndParallelAgree) {
  auto f = [](std::size_t i) { return static_cast<double>(i * i) / 7.0; };
  EXPECT_EQ(map_indices(1000, f, Execution::Serial), map_indices(1000, f, Execution::Parallel));
  EXPECT_TRUE(map_indices(0, f, Execution::Parallel).empty());
}

TEST(MapIndices, RethrowsFromWorkers) {
  auto f = [](std::size_t i) -> int {
    if (i == 37) throw std::runtime_error("boom");
    return static_cast<int>(i);
  };
  EXPECT_THROW(map_indices(100, f, Execution::Parallel), std::runtime_error);
  EXPECT_THROW(map_indices(100, f, Execution::Serial), std::runtime_error);
}

TEST(ThreadCount, SetAndRestore) {
  const int initial = thread_count();
  set_thread_count(2);
  EXPECT_EQ(thread_count(), 2);
  set_thread_count(0);
  EXPECT_EQ(thread_count(), initial);
}

TEST(AlphaSweep, ParallelIsBitwiseSerial) {
  const auto k = preset("four-corner");
  std::vector<Direction> dirs;
  for (long i = -20; i <= 20; ++i) {
    dirs.push_back(Direction::x_chart(Rational(i, 20)));
    dirs.push_back(Direction::y_chart(Rational(i, 23)));
  }
  set_thread_count(3);
  for (auto backend : {Backend::Exact, Backend::Float}) {
    const auto s = alpha_sweep(k, dirs, 5, backend, Execution::Serial);
    const auto p = alpha_sweep(k, dirs, 5, backend, Execution::Parallel);
    EXPECT_EQ(s, p);
  }
  const auto es = alpha_sweep_exact(k, dirs, 5, Execution::Serial);
  const auto ep = alpha_sweep_exact(k, dirs, 5, Execution::Parallel);
  ASSERT_EQ(es.size(), ep.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    EXPECT_EQ(es[i].sheared, ep[i].sheared);
    EXPECT_EQ(es[i].scale, ep[i].scale);
  }
  set_thread_count(0);
}
