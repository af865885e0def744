#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biseld/dsp/audio_clip.hpp"
#include "biseld/dsp/feature_config.hpp"
#include "biseld/dsp/matrix.hpp"
#include "biseld/dsp/mel.hpp"
#include "biseld/dsp/stft.hpp"

namespace biseld::btff {

using dsp::ComplexSpectrogram;
using dsp::FeatureConfig;
using dsp::Matrix;
using dsp::MelFilterbank;

/// Channel order of the 8-channel binaural time-frequency feature.
enum class Channel { ms_left, ms_right, v_left, v_right, itd, ild, sc_left, sc_right };

inline constexpr std::size_t kNumChannels = 8;
inline constexpr std::array<std::string_view, kNumChannels> kChannelNames = {
    "MS_L", "MS_R", "V_L", "V_R", "ITD", "ILD", "SC_L", "SC_R"};

std::optional<Channel> channel_from_name(std::string_view name);
std::vector<std::string> channel_names();

/// Full-band (0 .. Nyquist) filterbanks in both normalizations.
struct Filterbanks {
  MelFilterbank spectral;
  MelFilterbank averaging;

  static Filterbanks make(const FeatureConfig& config);
};

class BtffTensor {
 public:
  BtffTensor(std::array<Matrix, kNumChannels> channels, FeatureConfig config,
             std::vector<double> frame_times_s);

  const Matrix& channel(Channel c) const { return channels_[static_cast<std::size_t>(c)]; }
  const Matrix& channel(std::size_t i) const { return channels_.at(i); }
  std::size_t frames() const { return channels_[0].rows(); }
  std::size_t bands() const { return channels_[0].cols(); }
  const FeatureConfig& config() const { return config_; }
  /// Start time of each frame in seconds.
  const std::vector<double>& frame_times_s() const { return frame_times_s_; }

  /// Row-major 8 x frames x bands.
  std::vector<double> flatten() const;

 private:
  std::array<Matrix, kNumChannels> channels_;
  FeatureConfig config_;
  std::vector<double> frame_times_s_;
};

/// 10 log10(sum_k w(b,k) |P(m,k)|^2 + log_floor) with the spectral filterbank.
Matrix mel_spectrogram(const ComplexSpectrogram& spec, const MelFilterbank& spectral,
                       const FeatureConfig& config);

/// Time derivative of a frames x bins magnitude matrix: forward difference
/// on the first frame, central inside, backward on the last.
Matrix velocity(const Matrix& magnitude);

/// project_mel(velocity(|P|)) with the averaging filterbank; may be negative.
/// Throws biseld::Error("too few frames") for fewer than two frames.
Matrix velocity_map(const ComplexSpectrogram& spec, const MelFilterbank& averaging);

/// Per-bin interaural phase delay arg(P_R / P_L) / omega_k in seconds, on
/// the principal branch, for bins 1 .. itd_max_bin(); zero elsewhere and
/// where either ear is below 1e-12 of its frame maximum.
Matrix phase_delay(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
                   const FeatureConfig& config);

/// project_mel(phase_delay) with the averaging filterbank; bands with no
/// support in 1 .. itd_max_bin() are zero.
Matrix itd_map(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
               const MelFilterbank& averaging, const FeatureConfig& config);

inline constexpr double kIldClampDb = 60.0;

/// Per-bin 20 log10 |P_R / P_L| for bins above high_min_bin(), clamped to
/// +-60 dB; zero elsewhere and where either ear is below 1e-12 of its frame
/// maximum.
Matrix level_difference(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
                        const FeatureConfig& config);

/// project_mel(level_difference) with the averaging filterbank; bands with
/// no support above high_min_bin() are zero.
Matrix ild_map(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
               const MelFilterbank& averaging, const FeatureConfig& config);

/// Like mel_spectrogram but only bins above high_min_bin() contribute power;
/// bands without such bins sit at 10 log10(log_floor).
Matrix sc_map(const ComplexSpectrogram& spec, const MelFilterbank& spectral,
              const FeatureConfig& config);

/// True if band b has any support in bins [first, last].
bool band_touches(const MelFilterbank& fb, std::size_t band, std::size_t first,
                  std::size_t last);

/// STFT of each ear once, then all five sub-features in channel order.
/// Throws biseld::Error("binaural input required") for non-stereo input.
BtffTensor extract_btff(const dsp::AudioClip& clip, const FeatureConfig& config);

}  // namespace biseld::btff
