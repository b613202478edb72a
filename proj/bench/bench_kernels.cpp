// Serial reference loops vs their OpenMP counterparts.
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "favard/analysis.hpp"
#include "favard/kernels.hpp"
#include "favard/needle.hpp"
#include "favard/projection.hpp"

namespace {

using namespace favard;

std::vector<Direction> quarter_turn(int count) {
  std::vector<Direction> dirs;
  for (int i = 0; i < count; ++i) dirs.push_back(Direction::from_angle((i + 0.5) * std::numbers::pi / (4 * count)));
  return dirs;
}

void BM_AlphaSweepFloat(benchmark::State& state, Execution exec) {
  const auto ifs = preset("four-corner");
  const auto dirs = quarter_turn(128);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(alpha_sweep(ifs, dirs, n, Backend::Float, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(dirs.size()));
}

void BM_AlphaSweepExact(benchmark::State& state, Execution exec) {
  const auto ifs = preset("four-corner");
  const auto dirs = quarter_turn(128);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(alpha_sweep_exact(ifs, dirs, n, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(dirs.size()));
}

void BM_Needle(benchmark::State& state, Execution exec) {
  const auto ifs = preset("four-corner");
  NeedleConfig cfg;
  cfg.trials = 200'000;
  cfg.generation = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_favard_mc(ifs, cfg, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.trials));
}

void BM_Generator(benchmark::State& state, bool fast) {
  const auto p = project_ifs(preset("four-corner"), Direction::x_chart(Rational(7, 23)));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    ExactGenerator gen(p, kDefaultIntervalCap, fast);
    gen.advance_to(n);
    benchmark::DoNotOptimize(gen.measure());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_AlphaSweepFloat, serial, Execution::Serial)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AlphaSweepFloat, parallel, Execution::Parallel)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AlphaSweepExact, serial, Execution::Serial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AlphaSweepExact, parallel, Execution::Parallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Needle, serial, Execution::Serial)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Needle, parallel, Execution::Parallel)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Generator, scaled_int64, true)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Generator, gmp_rational, false)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
