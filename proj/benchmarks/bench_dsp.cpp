#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "biseld/dsp/convolve.hpp"
#include "biseld/dsp/feature_config.hpp"
#include "biseld/dsp/stft.hpp"

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 0.1);
  std::vector<double> x(n);
  for (auto& v : x) v = dist(gen);
  return x;
}

void BM_Stft(benchmark::State& state) {
  const biseld::dsp::FeatureConfig config;
  const auto x = noise(static_cast<std::size_t>(state.range(0)) * config.sample_rate, 1);
  for (auto _ : state) benchmark::DoNotOptimize(biseld::dsp::stft(x, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_Stft)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

// HRIR-length kernels against one 5 s event.
void BM_ConvolveFft(benchmark::State& state) {
  const auto x = noise(5 * 32000, 2);
  const auto h = noise(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(biseld::dsp::convolve_fft(x, h));
}
BENCHMARK(BM_ConvolveFft)->Arg(256)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_ConvolveDirect(benchmark::State& state) {
  const auto x = noise(5 * 32000, 2);
  const auto h = noise(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(biseld::dsp::convolve_direct(x, h));
}
BENCHMARK(BM_ConvolveDirect)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
