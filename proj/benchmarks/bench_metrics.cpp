#include <benchmark/benchmark.h>

#include <random>

#include "biseld/eval/metrics.hpp"

namespace {

using biseld::Direction;
using biseld::eval::FrameDetection;

// 60 s at 0.1 s hop, 12 classes, roughly a third of the cells active.
std::pair<FrameDetection, FrameDetection> scene(unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> az(-180.0, 180.0), jitter(-30.0, 30.0);
  std::bernoulli_distribution on(0.33), keep(0.9);
  FrameDetection ref(600, 12, 0.1), pred(600, 12, 0.1);
  for (std::size_t m = 0; m < 600; ++m) {
    for (std::size_t c = 0; c < 12; ++c) {
      if (!on(gen)) continue;
      const double a = az(gen);
      ref.set(m, c, Direction(a, 0.0));
      if (keep(gen)) pred.set(m, c, Direction(a + jitter(gen), 0.0));
    }
  }
  return {ref, pred};
}

void BM_Evaluate(benchmark::State& state) {
  const auto [ref, pred] = scene(5);
  biseld::eval::EvalOptions options;
  if (state.range(0) == 1) options.granularity = biseld::eval::Granularity::frame;
  for (auto _ : state) benchmark::DoNotOptimize(biseld::eval::evaluate(ref, pred, options));
}
BENCHMARK(BM_Evaluate)->Arg(0)->Arg(1);

}  // namespace
