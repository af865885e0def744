#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "biseld/dsp/biquad.hpp"
#include "biseld/dsp/resample.hpp"
#include "biseld/dsp/wav_io.hpp"
#include "biseld/error.hpp"
#include "biseld/scene/event.hpp"
#include "biseld/scene/rng.hpp"

namespace biseld::scene {

EventSample::EventSample(dsp::AudioClip clip, int class_id, double active_onset_s,
                         double active_offset_s)
    : class_id_(class_id), onset_s_(active_onset_s), offset_s_(active_offset_s) {
  if (clip.num_channels() != 1) throw Error("event clip must be mono");
  if (class_id < 0) throw Error(fmt::format("invalid class id {}", class_id));
  if (!(active_onset_s >= 0.0 && active_onset_s < active_offset_s &&
        active_offset_s <= kDurationS)) {
    throw Error(fmt::format("invalid active region [{}, {}]", active_onset_s, active_offset_s));
  }
  const int sr = clip.sample_rate();
  const auto length = static_cast<std::size_t>(std::lround(kDurationS * sr));
  std::vector<double> samples(clip.channel(0).begin(), clip.channel(0).end());
  samples.resize(length, 0.0);
  clip_ = dsp::AudioClip::mono(std::move(samples), sr);
}

std::string to_string(SurrogateKind kind) {
  switch (kind) {
    case SurrogateKind::tone_burst: return "tone_burst";
    case SurrogateKind::chirp: return "chirp";
    case SurrogateKind::noise_burst: return "noise_burst";
    case SurrogateKind::am_tone: return "am_tone";
  }
  return "tone_burst";
}

SurrogateKind surrogate_kind_from_string(const std::string& name) {
  for (auto k : {SurrogateKind::tone_burst, SurrogateKind::chirp, SurrogateKind::noise_burst,
                 SurrogateKind::am_tone}) {
    if (to_string(k) == name) return k;
  }
  throw Error(fmt::format("unknown surrogate kind '{}'", name));
}

SurrogateKind surrogate_kind_for_class(int class_id) {
  return static_cast<SurrogateKind>(class_id % 4);
}

double surrogate_center_hz(int class_id) {
  return 250.0 * std::exp2(class_id * 5.0 / 12.0);
}

EventSample synth_surrogate_event(SurrogateKind kind, int class_id, std::uint64_t seed,
                                  int sample_rate) {
  if (sample_rate <= 0) throw Error("sample rate must be positive");
  if (class_id < 0) throw Error(fmt::format("invalid class id {}", class_id));
  Rng rng(derive_seed({seed, static_cast<std::uint64_t>(class_id),
                       static_cast<std::uint64_t>(kind)}));
  const double onset = (500 + static_cast<int>(rng.index(1001))) / 1000.0;
  const double offset = (3500 + static_cast<int>(rng.index(1001))) / 1000.0;

  const double sr = sample_rate;
  const double fc = std::min(surrogate_center_hz(class_id), 0.2 * sr);
  const auto total = static_cast<std::size_t>(std::lround(EventSample::kDurationS * sr));
  const auto n0 = static_cast<std::size_t>(std::lround(onset * sr));
  const auto n1 = static_cast<std::size_t>(std::lround(offset * sr));
  const std::size_t n = n1 - n0;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  std::vector<double> body(n);
  switch (kind) {
    case SurrogateKind::tone_burst: {
      const double ph = two_pi * rng.uniform();
      for (std::size_t i = 0; i < n; ++i) {
        const double t = i / sr;
        body[i] = std::sin(two_pi * fc * t + ph) + 0.5 * std::sin(two_pi * 2.0 * fc * t + ph) +
                  0.25 * std::sin(two_pi * 3.0 * fc * t + ph);
      }
      break;
    }
    case SurrogateKind::chirp: {
      // Linear sweep fc/2 -> 2 fc over the active region.
      const double f0 = 0.5 * fc, f1 = 2.0 * fc, dur = n / sr;
      const double ph = two_pi * rng.uniform();
      for (std::size_t i = 0; i < n; ++i) {
        const double t = i / sr;
        body[i] = std::sin(two_pi * (f0 * t + 0.5 * (f1 - f0) / dur * t * t) + ph);
      }
      break;
    }
    case SurrogateKind::noise_burst: {
      std::vector<double> white(n);
      for (auto& v : white) v = rng.normal();
      body = dsp::Biquad::bandpass(fc, 0.7, sample_rate).apply(white);
      break;
    }
    case SurrogateKind::am_tone: {
      const double fm = 2.0 + class_id;
      const double ph = two_pi * rng.uniform();
      for (std::size_t i = 0; i < n; ++i) {
        const double t = i / sr;
        body[i] = std::sin(two_pi * fc * t + ph) * (0.6 + 0.4 * std::sin(two_pi * fm * t));
      }
      break;
    }
  }

  const auto fade = std::min<std::size_t>(static_cast<std::size_t>(std::lround(0.010 * sr)), n / 2);
  for (std::size_t i = 0; i < fade; ++i) {
    const double g = 0.5 - 0.5 * std::cos(std::numbers::pi * (i + 0.5) / fade);
    body[i] *= g;
    body[n - 1 - i] *= g;
  }
  double peak = 0.0;
  for (double v : body) peak = std::max(peak, std::abs(v));
  const double gain = peak > 0.0 ? std::pow(10.0, kSurrogatePeakDbfs / 20.0) / peak : 0.0;

  std::vector<double> samples(total, 0.0);
  for (std::size_t i = 0; i < n; ++i) samples[n0 + i] = body[i] * gain;
  return EventSample(dsp::AudioClip::mono(std::move(samples), sample_rate), class_id, onset,
                     offset);
}

EventSample load_event_wav(const std::filesystem::path& path, int class_id, int sample_rate) {
  const dsp::AudioClip raw = dsp::read_wav(path);
  std::vector<double> mono(raw.num_samples(), 0.0);
  for (std::size_t c = 0; c < raw.num_channels(); ++c) {
    const auto ch = raw.channel(c);
    for (std::size_t i = 0; i < mono.size(); ++i) mono[i] += ch[i] / raw.num_channels();
  }
  mono = dsp::resample(mono, raw.sample_rate(), sample_rate);
  const auto length =
      static_cast<std::size_t>(std::lround(EventSample::kDurationS * sample_rate));
  mono.resize(length, 0.0);

  double peak = 0.0;
  for (double v : mono) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw IoError(fmt::format("{}: event is silent", path.string()));
  std::size_t first = 0, last = mono.size() - 1;
  while (std::abs(mono[first]) <= 1e-3 * peak) ++first;
  while (std::abs(mono[last]) <= 1e-3 * peak) --last;
  const double onset = static_cast<double>(first) / sample_rate;
  const double offset = static_cast<double>(last + 1) / sample_rate;
  return EventSample(dsp::AudioClip::mono(std::move(mono), sample_rate), class_id, onset,
                     offset);
}

}  // namespace biseld::scene
