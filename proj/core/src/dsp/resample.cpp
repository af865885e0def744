#include "biseld/dsp/resample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::dsp {

namespace {

constexpr double kZeroCrossings = 32.0;
constexpr double kRolloff = 0.95;
constexpr double kKaiserBeta = 8.0;
constexpr int kTableOversample = 512;

// Windowed-sinc lowpass tabulated on [0, half_width] input samples.
class SincTable {
 public:
  explicit SincTable(double cutoff) : cutoff_(cutoff), half_width_(kZeroCrossings / cutoff) {
    const auto n = static_cast<std::size_t>(std::ceil(half_width_ * kTableOversample)) + 2;
    table_.resize(n);
    const double i0_beta = std::cyl_bessel_i(0.0, kKaiserBeta);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) / kTableOversample;
      const double r = x / half_width_;
      if (r >= 1.0) {
        table_[i] = 0.0;
        continue;
      }
      const double arg = std::numbers::pi * cutoff_ * x;
      const double sinc = x == 0.0 ? 1.0 : std::sin(arg) / arg;
      const double window = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) / i0_beta;
      table_[i] = cutoff_ * sinc * window;
    }
  }

  double half_width() const { return half_width_; }

  double operator()(double x) const {
    const double pos = std::abs(x) * kTableOversample;
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= table_.size()) return 0.0;
    const double frac = pos - static_cast<double>(i);
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

 private:
  double cutoff_;
  double half_width_;
  std::vector<double> table_;
};

}  // namespace

std::vector<double> resample(std::span<const double> samples, int source_rate,
                             int target_rate) {
  if (source_rate <= 0) throw Error("resample: source rate must be positive");
  if (target_rate <= 0) {
    throw Error(fmt::format("resample: target rate must be positive, got {}", target_rate));
  }
  if (source_rate == target_rate) return {samples.begin(), samples.end()};

  const auto len = static_cast<std::uint64_t>(samples.size());
  const std::uint64_t out_len =
      (len * static_cast<std::uint64_t>(target_rate) + static_cast<std::uint64_t>(source_rate) / 2) /
      static_cast<std::uint64_t>(source_rate);
  const double ratio = static_cast<double>(source_rate) / target_rate;
  const double cutoff = kRolloff * std::min(1.0, static_cast<double>(target_rate) / source_rate);
  const SincTable kernel(cutoff);
  const double half = kernel.half_width();
  const auto n_in = static_cast<std::int64_t>(samples.size());

  std::vector<double> out(out_len, 0.0);
  for (std::uint64_t n = 0; n < out_len; ++n) {
    const double t = static_cast<double>(n) * ratio;
    const auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(t - half)));
    const auto hi = std::min<std::int64_t>(n_in - 1, static_cast<std::int64_t>(std::floor(t + half)));
    double acc = 0.0;
    for (std::int64_t j = lo; j <= hi; ++j) acc += samples[j] * kernel(t - static_cast<double>(j));
    out[n] = acc;
  }
  return out;
}

AudioClip resample(const AudioClip& clip, int target_rate) {
  if (target_rate <= 0) {
    throw Error(fmt::format("resample: target rate must be positive, got {}", target_rate));
  }
  if (clip.sample_rate() == target_rate) return clip;
  std::vector<std::vector<double>> channels;
  for (const auto& ch : clip.channels()) {
    channels.push_back(resample(ch, clip.sample_rate(), target_rate));
  }
  return AudioClip(std::move(channels), target_rate);
}

}  // namespace biseld::dsp
