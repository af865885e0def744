#include "biseld/btff/btff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::btff {

namespace {

constexpr double kNullGuard = 1e-12;

void require_same_shape(const ComplexSpectrogram& a, const ComplexSpectrogram& b) {
  if (a.frames() != b.frames() || a.bins() != b.bins()) {
    throw Error(fmt::format("spectrogram shapes differ: {}x{} vs {}x{}", a.frames(), a.bins(),
                            b.frames(), b.bins()));
  }
}

void require_bins(const ComplexSpectrogram& spec, const MelFilterbank& fb) {
  if (spec.bins() != fb.bins()) {
    throw Error(fmt::format("spectrogram has {} bins, filterbank expects {}", spec.bins(),
                            fb.bins()));
  }
}

void require_config(const ComplexSpectrogram& spec, const FeatureConfig& config) {
  if (spec.bins() != config.num_bins()) {
    throw Error(fmt::format("spectrogram has {} bins, config implies {}", spec.bins(),
                            config.num_bins()));
  }
}

// Per-frame magnitude thresholds below which a bin counts as a spectral null.
std::vector<double> null_thresholds(const ComplexSpectrogram& spec) {
  std::vector<double> out(spec.frames());
  for (std::size_t m = 0; m < spec.frames(); ++m) {
    double peak = 0.0;
    for (const auto& c : spec.frame(m)) peak = std::max(peak, std::abs(c));
    out[m] = kNullGuard * peak;
  }
  return out;
}

void zero_bands_outside(Matrix& projected, const MelFilterbank& fb, std::size_t first,
                        std::size_t last) {
  for (std::size_t b = 0; b < fb.bands(); ++b) {
    if (band_touches(fb, b, first, last)) continue;
    for (std::size_t m = 0; m < projected.rows(); ++m) projected(m, b) = 0.0;
  }
}

Matrix log_power_projection(const Matrix& power, const MelFilterbank& spectral,
                            double log_floor) {
  Matrix out = dsp::project_mel(power, spectral);
  for (double& v : out.values()) v = 10.0 * std::log10(v + log_floor);
  return out;
}

}  // namespace

std::optional<Channel> channel_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumChannels; ++i) {
    if (kChannelNames[i] == name) return static_cast<Channel>(i);
  }
  return std::nullopt;
}

std::vector<std::string> channel_names() {
  return {kChannelNames.begin(), kChannelNames.end()};
}

Filterbanks Filterbanks::make(const FeatureConfig& config) {
  const double nyquist = config.sample_rate / 2.0;
  return {dsp::make_mel_filterbank(config, dsp::MelNormalization::spectral, 0.0, nyquist),
          dsp::make_mel_filterbank(config, dsp::MelNormalization::averaging, 0.0, nyquist)};
}

BtffTensor::BtffTensor(std::array<Matrix, kNumChannels> channels, FeatureConfig config,
                       std::vector<double> frame_times_s)
    : channels_(std::move(channels)), config_(config), frame_times_s_(std::move(frame_times_s)) {
  for (const auto& ch : channels_) {
    if (ch.rows() != channels_[0].rows() || ch.cols() != channels_[0].cols()) {
      throw Error("BTFF channels must share one frames x bands shape");
    }
    for (double v : ch.values()) {
      if (!std::isfinite(v)) throw Error("BTFF contains a non-finite value");
    }
  }
  if (frame_times_s_.size() != channels_[0].rows()) {
    throw Error("BTFF frame time count does not match frames");
  }
}

std::vector<double> BtffTensor::flatten() const {
  std::vector<double> out;
  out.reserve(kNumChannels * frames() * bands());
  for (const auto& ch : channels_) out.insert(out.end(), ch.values().begin(), ch.values().end());
  return out;
}

bool band_touches(const MelFilterbank& fb, std::size_t band, std::size_t first,
                  std::size_t last) {
  const auto& support = fb.support(band);
  if (!support || first > last) return false;
  return support->first <= last && support->last >= first;
}

Matrix mel_spectrogram(const ComplexSpectrogram& spec, const MelFilterbank& spectral,
                       const FeatureConfig& config) {
  require_bins(spec, spectral);
  return log_power_projection(spec.power(), spectral, config.log_floor);
}

Matrix velocity(const Matrix& s) {
  const std::size_t frames = s.rows();
  if (frames < 2) throw Error(fmt::format("too few frames for velocity: {}", frames));
  Matrix v(frames, s.cols());
  for (std::size_t k = 0; k < s.cols(); ++k) {
    v(0, k) = s(1, k) - s(0, k);
    for (std::size_t m = 1; m + 1 < frames; ++m) v(m, k) = (s(m + 1, k) - s(m - 1, k)) / 2.0;
    v(frames - 1, k) = s(frames - 1, k) - s(frames - 2, k);
  }
  return v;
}

Matrix velocity_map(const ComplexSpectrogram& spec, const MelFilterbank& averaging) {
  require_bins(spec, averaging);
  return dsp::project_mel(velocity(spec.magnitude()), averaging);
}

Matrix phase_delay(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
                   const FeatureConfig& config) {
  require_same_shape(left, right);
  require_config(left, config);
  const std::size_t k_max = std::min(config.itd_max_bin(), left.bins() - 1);
  const auto guard_left = null_thresholds(left);
  const auto guard_right = null_thresholds(right);
  Matrix out(left.frames(), left.bins());
  for (std::size_t m = 0; m < left.frames(); ++m) {
    for (std::size_t k = 1; k <= k_max; ++k) {
      const auto pl = left(m, k);
      const auto pr = right(m, k);
      if (std::abs(pl) < guard_left[m] || std::abs(pr) < guard_right[m] || std::abs(pl) == 0.0 ||
          std::abs(pr) == 0.0) {
        continue;
      }
      // Im ln(P_R / P_L) = arg(P_R conj(P_L)), principal branch.
      double phase = std::arg(pr * std::conj(pl));
      if (phase == -std::numbers::pi) phase = std::numbers::pi;
      const double omega = 2.0 * std::numbers::pi * config.bin_frequency(k);
      out(m, k) = phase / omega;
    }
  }
  return out;
}

Matrix itd_map(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
               const MelFilterbank& averaging, const FeatureConfig& config) {
  require_bins(left, averaging);
  Matrix out = dsp::project_mel(phase_delay(left, right, config), averaging);
  zero_bands_outside(out, averaging, 1, config.itd_max_bin());
  return out;
}

Matrix level_difference(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
                        const FeatureConfig& config) {
  require_same_shape(left, right);
  require_config(left, config);
  const auto guard_left = null_thresholds(left);
  const auto guard_right = null_thresholds(right);
  Matrix out(left.frames(), left.bins());
  for (std::size_t m = 0; m < left.frames(); ++m) {
    for (std::size_t k = config.high_min_bin() + 1; k < left.bins(); ++k) {
      const double l = std::abs(left(m, k));
      const double r = std::abs(right(m, k));
      if (l < guard_left[m] || r < guard_right[m] || l == 0.0 || r == 0.0) continue;
      out(m, k) = std::clamp(20.0 * std::log10(r / l), -kIldClampDb, kIldClampDb);
    }
  }
  return out;
}

Matrix ild_map(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
               const MelFilterbank& averaging, const FeatureConfig& config) {
  require_bins(left, averaging);
  Matrix out = dsp::project_mel(level_difference(left, right, config), averaging);
  zero_bands_outside(out, averaging, config.high_min_bin() + 1, averaging.bins() - 1);
  return out;
}

Matrix sc_map(const ComplexSpectrogram& spec, const MelFilterbank& spectral,
              const FeatureConfig& config) {
  require_bins(spec, spectral);
  require_config(spec, config);
  Matrix power = spec.power();
  const std::size_t cut = std::min(config.high_min_bin() + 1, power.cols());
  for (std::size_t m = 0; m < power.rows(); ++m) {
    auto row = power.row(m);
    std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(cut), 0.0);
  }
  return log_power_projection(power, spectral, config.log_floor);
}

BtffTensor extract_btff(const dsp::AudioClip& clip, const FeatureConfig& config) {
  config.validate();
  if (clip.num_channels() != 2) {
    throw Error(fmt::format("binaural input required: clip has {} channel(s)",
                            clip.num_channels()));
  }
  if (clip.sample_rate() != config.sample_rate) {
    throw Error(fmt::format("clip is at {} Hz but features expect {} Hz; resample first",
                            clip.sample_rate(), config.sample_rate));
  }
  const auto fbs = Filterbanks::make(config);
  const auto left = dsp::stft(clip.channel(0), config);
  const auto right = dsp::stft(clip.channel(1), config);

  std::array<Matrix, kNumChannels> channels{
      mel_spectrogram(left, fbs.spectral, config),
      mel_spectrogram(right, fbs.spectral, config),
      velocity_map(left, fbs.averaging),
      velocity_map(right, fbs.averaging),
      itd_map(left, right, fbs.averaging, config),
      ild_map(left, right, fbs.averaging, config),
      sc_map(left, fbs.spectral, config),
      sc_map(right, fbs.spectral, config),
  };
  std::vector<double> times(left.frames());
  for (std::size_t m = 0; m < times.size(); ++m) {
    times[m] = static_cast<double>(m * config.hop) / config.sample_rate;
  }
  return BtffTensor(std::move(channels), config, std::move(times));
}

}  // namespace biseld::btff
