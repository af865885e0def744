#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "biseld/dsp/feature_config.hpp"
#include "biseld/dsp/matrix.hpp"

namespace biseld::dsp {

/// HTK mel scale: 2595 log10(1 + f / 700).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

enum class MelNormalization {
  /// Slaney-style unit area: each triangle scaled by 2 / (f_right - f_left).
  spectral,
  /// Each row rescaled to sum to exactly 1, so projection is a weighted
  /// mean and keeps the units of the projected quantity.
  averaging,
};

struct BinRange {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};

class MelFilterbank {
 public:
  MelFilterbank(Matrix weights, MelNormalization mode, std::vector<double> centers_hz,
                double bin_hz);

  std::size_t bands() const { return weights_.rows(); }
  std::size_t bins() const { return weights_.cols(); }
  MelNormalization mode() const { return mode_; }
  const Matrix& weights() const { return weights_; }
  const std::vector<double>& centers_hz() const { return centers_hz_; }

  /// Bins with nonzero weight in band b; nullopt for an empty band.
  const std::optional<BinRange>& support(std::size_t b) const { return support_[b]; }
  double bin_hz() const { return bin_hz_; }

 private:
  Matrix weights_;
  MelNormalization mode_;
  std::vector<double> centers_hz_;
  std::vector<std::optional<BinRange>> support_;
  double bin_hz_;
};

/// n_mels triangular bands uniformly spaced in mel between f_min and f_max,
/// evaluated on the STFT bin frequencies k * sample_rate / n_fft.
MelFilterbank make_mel_filterbank(const FeatureConfig& config, MelNormalization mode,
                                  double f_min, double f_max);

/// output(m, b) = sum_k weights(b, k) * matrix(m, k).
Matrix project_mel(const Matrix& matrix, const MelFilterbank& fb);

}  // namespace biseld::dsp
