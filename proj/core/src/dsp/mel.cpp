#include "biseld/dsp/mel.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::dsp {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(Matrix weights, MelNormalization mode,
                             std::vector<double> centers_hz, double bin_hz)
    : weights_(std::move(weights)),
      mode_(mode),
      centers_hz_(std::move(centers_hz)),
      support_(weights_.rows()),
      bin_hz_(bin_hz) {
  for (std::size_t b = 0; b < weights_.rows(); ++b) {
    const auto row = weights_.row(b);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] < 0.0) throw Error("mel filterbank weights must be nonnegative");
      if (row[k] == 0.0) continue;
      if (!support_[b]) support_[b] = BinRange{k, k};
      support_[b]->last = k;
    }
  }
}

MelFilterbank make_mel_filterbank(const FeatureConfig& config, MelNormalization mode,
                                  double f_min, double f_max) {
  config.validate();
  const double nyquist = config.sample_rate / 2.0;
  if (!(f_min >= 0.0 && f_min < f_max && f_max <= nyquist)) {
    throw Error(fmt::format(
        "mel filterbank needs 0 <= f_min < f_max <= sample_rate/2, got [{}, {}]", f_min,
        f_max));
  }
  const std::size_t bands = config.n_mels;
  const std::size_t bins = config.num_bins();

  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(f_max);
  std::vector<double> edges(bands + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double mel = mel_lo + (mel_hi - mel_lo) * i / static_cast<double>(bands + 1);
    edges[i] = mel_to_hz(mel);
  }
  edges.front() = f_min;
  edges.back() = f_max;

  Matrix weights(bands, bins);
  std::vector<double> centers(bands);
  for (std::size_t b = 0; b < bands; ++b) {
    const double left = edges[b];
    const double center = edges[b + 1];
    const double right = edges[b + 2];
    centers[b] = center;
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = config.bin_frequency(k);
      const double rise = (f - left) / (center - left);
      const double fall = (right - f) / (right - center);
      weights(b, k) = std::max(0.0, std::min(rise, fall));
    }
    auto row = weights.row(b);
    if (mode == MelNormalization::spectral) {
      const double scale = 2.0 / (right - left);
      for (double& w : row) w *= scale;
    } else {
      double sum = 0.0;
      for (double w : row) sum += w;
      if (sum > 0.0) {
        for (double& w : row) w /= sum;
      }
    }
  }
  return MelFilterbank(std::move(weights), mode, std::move(centers), config.bin_hz());
}

Matrix project_mel(const Matrix& matrix, const MelFilterbank& fb) {
  if (matrix.cols() != fb.bins()) {
    throw Error(fmt::format("mel projection: matrix has {} bins, filterbank expects {}",
                            matrix.cols(), fb.bins()));
  }
  Matrix out(matrix.rows(), fb.bands());
  for (std::size_t m = 0; m < matrix.rows(); ++m) {
    const auto in = matrix.row(m);
    for (std::size_t b = 0; b < fb.bands(); ++b) {
      const auto& support = fb.support(b);
      if (!support) continue;
      const auto w = fb.weights().row(b);
      double acc = 0.0;
      for (std::size_t k = support->first; k <= support->last; ++k) acc += w[k] * in[k];
      out(m, b) = acc;
    }
  }
  return out;
}

}  // namespace biseld::dsp
