#include "biseld/dsp/feature_config.hpp"

#include <cmath>
#include <fmt/format.h>

#include "biseld/dsp/fft.hpp"
#include "biseld/error.hpp"

namespace biseld::dsp {

std::string to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::hann: return "hann";
    case WindowKind::hamming: return "hamming";
    case WindowKind::rectangular: return "rectangular";
  }
  return "hann";
}

WindowKind window_from_string(const std::string& name) {
  if (name == "hann" || name == "hanning") return WindowKind::hann;
  if (name == "hamming") return WindowKind::hamming;
  if (name == "rectangular" || name == "boxcar") return WindowKind::rectangular;
  throw Error(fmt::format("unknown window '{}'", name));
}

void FeatureConfig::validate() const {
  if (sample_rate <= 0) throw Error("sample_rate must be positive");
  if (n_fft < 2 || !is_pow2(n_fft)) {
    throw Error(fmt::format("n_fft must be a power of two, got {}", n_fft));
  }
  if (hop == 0 || hop > n_fft) {
    throw Error(fmt::format("hop must be in [1, n_fft], got {}", hop));
  }
  if (n_mels == 0) throw Error("n_mels must be positive");
  const double nyquist = sample_rate / 2.0;
  if (!(f_itd_max > 0.0 && f_itd_max < f_high_min && f_high_min < nyquist)) {
    throw Error(fmt::format(
        "need 0 < f_itd_max < f_high_min < sample_rate/2, got {} / {} / {}", f_itd_max,
        f_high_min, nyquist));
  }
  if (!(log_floor > 0.0)) throw Error("log_floor must be positive");
}

namespace {
// Largest k with k * sample_rate / n_fft <= f. The small slack absorbs
// rounding when f sits exactly on a bin (1500 Hz -> 48 at 31.25 Hz).
std::size_t largest_bin_at_or_below(double f, std::size_t n_fft, int sample_rate) {
  const double k = std::floor(f * static_cast<double>(n_fft) / sample_rate + 1e-9);
  return static_cast<std::size_t>(std::max(0.0, k));
}
}  // namespace

std::size_t FeatureConfig::itd_max_bin() const {
  return largest_bin_at_or_below(f_itd_max, n_fft, sample_rate);
}

std::size_t FeatureConfig::high_min_bin() const {
  return largest_bin_at_or_below(f_high_min, n_fft, sample_rate);
}

std::size_t FeatureConfig::num_frames(std::size_t num_samples) const {
  if (num_samples < n_fft) return 0;
  return 1 + (num_samples - n_fft) / hop;
}

void to_json(nlohmann::json& j, const FeatureConfig& c) {
  j = nlohmann::json{{"sample_rate", c.sample_rate}, {"n_fft", c.n_fft},
                     {"hop", c.hop},                 {"n_mels", c.n_mels},
                     {"window", to_string(c.window)}, {"f_itd_max", c.f_itd_max},
                     {"f_high_min", c.f_high_min},   {"log_floor", c.log_floor}};
}

void from_json(const nlohmann::json& j, FeatureConfig& c) {
  c.sample_rate = j.value("sample_rate", c.sample_rate);
  c.n_fft = j.value("n_fft", c.n_fft);
  c.hop = j.value("hop", c.hop);
  c.n_mels = j.value("n_mels", c.n_mels);
  if (j.contains("window")) c.window = window_from_string(j.at("window").get<std::string>());
  c.f_itd_max = j.value("f_itd_max", c.f_itd_max);
  c.f_high_min = j.value("f_high_min", c.f_high_min);
  c.log_floor = j.value("log_floor", c.log_floor);
}

}  // namespace biseld::dsp
