#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace biseld::dsp {

/// Mono or stereo block of samples at a fixed rate. Channels always share
/// one length and every sample is finite; the constructor enforces both.
class AudioClip {
 public:
  AudioClip() = default;
  AudioClip(std::vector<std::vector<double>> channels, int sample_rate);

  static AudioClip mono(std::vector<double> samples, int sample_rate);
  static AudioClip stereo(std::vector<double> left, std::vector<double> right,
                          int sample_rate);

  int sample_rate() const { return sample_rate_; }
  std::size_t num_channels() const { return channels_.size(); }
  std::size_t num_samples() const {
    return channels_.empty() ? 0 : channels_.front().size();
  }
  double duration_s() const {
    return static_cast<double>(num_samples()) / sample_rate_;
  }

  std::span<const double> channel(std::size_t i) const { return channels_.at(i); }
  const std::vector<std::vector<double>>& channels() const { return channels_; }

  friend bool operator==(const AudioClip&, const AudioClip&) = default;

 private:
  std::vector<std::vector<double>> channels_;
  int sample_rate_ = 0;
};

}  // namespace biseld::dsp
