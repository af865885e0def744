#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "biseld/dsp/feature_config.hpp"
#include "biseld/dsp/matrix.hpp"

namespace biseld::dsp {

/// One-sided STFT, frames x (n_fft/2 + 1) bins, plus the parameters that
/// produced it.
class ComplexSpectrogram {
 public:
  ComplexSpectrogram() = default;
  ComplexSpectrogram(std::size_t frames, std::size_t n_fft, std::size_t hop,
                     int sample_rate);

  std::size_t frames() const { return frames_; }
  std::size_t bins() const { return bins_; }
  std::size_t n_fft() const { return n_fft_; }
  std::size_t hop() const { return hop_; }
  int sample_rate() const { return sample_rate_; }

  std::complex<double>& operator()(std::size_t m, std::size_t k) {
    return data_[m * bins_ + k];
  }
  const std::complex<double>& operator()(std::size_t m, std::size_t k) const {
    return data_[m * bins_ + k];
  }
  std::span<std::complex<double>> frame(std::size_t m) {
    return {data_.data() + m * bins_, bins_};
  }
  std::span<const std::complex<double>> frame(std::size_t m) const {
    return {data_.data() + m * bins_, bins_};
  }

  Matrix magnitude() const;
  Matrix power() const;

  friend bool operator==(const ComplexSpectrogram&, const ComplexSpectrogram&) = default;

 private:
  std::size_t frames_ = 0;
  std::size_t bins_ = 0;
  std::size_t n_fft_ = 0;
  std::size_t hop_ = 0;
  int sample_rate_ = 0;
  std::vector<std::complex<double>> data_;
};

/// Periodic window of length n (Hann: 0.5 - 0.5 cos(2 pi i / n)).
std::vector<double> make_window(WindowKind kind, std::size_t n);

/// Frame m covers samples [m*hop, m*hop + n_fft); no padding or centering.
/// Throws biseld::Error("insufficient samples ...") if the input is shorter
/// than one window.
ComplexSpectrogram stft(std::span<const double> channel, const FeatureConfig& config);

}  // namespace biseld::dsp
