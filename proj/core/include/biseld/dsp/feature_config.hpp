#pragma once

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

namespace biseld::dsp {

enum class WindowKind { hann, hamming, rectangular };

std::string to_string(WindowKind kind);
WindowKind window_from_string(const std::string& name);

/// Analysis parameters shared by the STFT, the filterbanks and the BTFF
/// cue maps. Defaults: 32 kHz, 1024-point Hann window, 10 ms hop, 64 mel
/// bands, ITD bins up to 1.5 kHz and ILD/SC bins above 5 kHz.
struct FeatureConfig {
  int sample_rate = 32000;
  std::size_t n_fft = 1024;
  std::size_t hop = 320;
  std::size_t n_mels = 64;
  WindowKind window = WindowKind::hann;
  double f_itd_max = 1500.0;
  double f_high_min = 5000.0;
  double log_floor = 1e-10;

  /// Throws biseld::Error when any invariant is violated.
  void validate() const;

  std::size_t num_bins() const { return n_fft / 2 + 1; }
  double bin_hz() const { return static_cast<double>(sample_rate) / n_fft; }
  double bin_frequency(std::size_t k) const { return k * bin_hz(); }
  double hop_s() const { return static_cast<double>(hop) / sample_rate; }

  /// Largest bin index whose frequency is <= f_itd_max (48 at defaults).
  std::size_t itd_max_bin() const;
  /// Largest bin index whose frequency is <= f_high_min (160 at defaults).
  std::size_t high_min_bin() const;

  /// 1 + floor((num_samples - n_fft) / hop), or 0 for short input.
  std::size_t num_frames(std::size_t num_samples) const;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

void to_json(nlohmann::json& j, const FeatureConfig& config);
/// Missing keys keep their defaults.
void from_json(const nlohmann::json& j, FeatureConfig& config);

}  // namespace biseld::dsp
