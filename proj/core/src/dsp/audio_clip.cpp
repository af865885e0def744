#include "biseld/dsp/audio_clip.hpp"

#include <cmath>
#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::dsp {

AudioClip::AudioClip(std::vector<std::vector<double>> channels, int sample_rate)
    : channels_(std::move(channels)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) {
    throw Error(fmt::format("sample rate must be positive, got {}", sample_rate_));
  }
  if (channels_.empty() || channels_.size() > 2) {
    throw Error(fmt::format("audio clip must have 1 or 2 channels, got {}",
                            channels_.size()));
  }
  const std::size_t n = channels_.front().size();
  for (const auto& ch : channels_) {
    if (ch.size() != n) throw Error("audio clip channels differ in length");
    for (double x : ch) {
      if (!std::isfinite(x)) throw Error("audio clip contains a non-finite sample");
    }
  }
}

AudioClip AudioClip::mono(std::vector<double> samples, int sample_rate) {
  std::vector<std::vector<double>> channels;
  channels.push_back(std::move(samples));
  return AudioClip(std::move(channels), sample_rate);
}

AudioClip AudioClip::stereo(std::vector<double> left, std::vector<double> right,
                            int sample_rate) {
  std::vector<std::vector<double>> channels;
  channels.push_back(std::move(left));
  channels.push_back(std::move(right));
  return AudioClip(std::move(channels), sample_rate);
}

}  // namespace biseld::dsp
