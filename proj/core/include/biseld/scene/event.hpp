#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "biseld/dsp/audio_clip.hpp"

namespace biseld::scene {

/// One mono source clip of exactly 5 s with its annotated active region.
class EventSample {
 public:
  static constexpr double kDurationS = 5.0;

  /// Pads with zeros or trims `clip` to 5 s. Throws if the clip is not mono
  /// or the active region is not 0 <= onset < offset <= 5.
  EventSample(dsp::AudioClip clip, int class_id, double active_onset_s, double active_offset_s);

  const dsp::AudioClip& clip() const { return clip_; }
  std::span<const double> samples() const { return clip_.channel(0); }
  int sample_rate() const { return clip_.sample_rate(); }
  int class_id() const { return class_id_; }
  double active_onset_s() const { return onset_s_; }
  double active_offset_s() const { return offset_s_; }

 private:
  dsp::AudioClip clip_;
  int class_id_;
  double onset_s_;
  double offset_s_;
};

enum class SurrogateKind { tone_burst, chirp, noise_burst, am_tone };

std::string to_string(SurrogateKind kind);
SurrogateKind surrogate_kind_from_string(const std::string& name);
/// Kind used for a class when a dataset is built from surrogates.
SurrogateKind surrogate_kind_for_class(int class_id);

/// Characteristic frequency of a class: 250 Hz * 2^(5 class / 12).
double surrogate_center_hz(int class_id);

inline constexpr double kSurrogatePeakDbfs = -12.0;

/// Deterministic 5 s synthetic event. The active region starts in
/// [0.5, 1.5] s and ends in [3.5, 4.5] s on a 1 ms grid, with 10 ms
/// raised-cosine fades; everything outside it is exactly zero. Peak level
/// is -12 dBFS.
EventSample synth_surrogate_event(SurrogateKind kind, int class_id, std::uint64_t seed,
                                  int sample_rate = 32000);

/// Imports a WAV as an event: downmixed to mono, resampled, padded/trimmed
/// to 5 s. The active region spans the first to last sample whose magnitude
/// exceeds 1e-3 of the clip peak.
EventSample load_event_wav(const std::filesystem::path& path, int class_id, int sample_rate);

}  // namespace biseld::scene
