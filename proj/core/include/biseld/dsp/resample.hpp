#pragma once

#include <span>
#include <vector>

#include "biseld/dsp/audio_clip.hpp"

namespace biseld::dsp {

/// Band-limited (Kaiser-windowed sinc) sample-rate conversion. Output
/// length is round(len * target / source). Equal rates return the input
/// unchanged.
AudioClip resample(const AudioClip& clip, int target_rate);

std::vector<double> resample(std::span<const double> samples, int source_rate,
                             int target_rate);

}  // namespace biseld::dsp
