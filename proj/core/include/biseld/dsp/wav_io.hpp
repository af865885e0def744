#pragma once

#include <filesystem>

#include "biseld/dsp/audio_clip.hpp"

namespace biseld::dsp {

/// Reads RIFF/WAVE with PCM 16/24/32-bit or IEEE float 32-bit samples
/// (plain or WAVE_FORMAT_EXTENSIBLE). Throws biseld::IoError.
AudioClip read_wav(const std::filesystem::path& path);

/// Writes 16-bit little-endian PCM. Samples are clipped to [-1, 1].
void write_wav(const std::filesystem::path& path, const AudioClip& clip);

}  // namespace biseld::dsp
