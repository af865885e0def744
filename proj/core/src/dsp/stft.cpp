#include "biseld/dsp/stft.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "biseld/dsp/fft.hpp"
#include "biseld/error.hpp"

namespace biseld::dsp {

ComplexSpectrogram::ComplexSpectrogram(std::size_t frames, std::size_t n_fft,
                                       std::size_t hop, int sample_rate)
    : frames_(frames),
      bins_(n_fft / 2 + 1),
      n_fft_(n_fft),
      hop_(hop),
      sample_rate_(sample_rate),
      data_(frames * bins_) {}

Matrix ComplexSpectrogram::magnitude() const {
  Matrix out(frames_, bins_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.values()[i] = std::abs(data_[i]);
  return out;
}

Matrix ComplexSpectrogram::power() const {
  Matrix out(frames_, bins_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.values()[i] = std::norm(data_[i]);
  return out;
}

std::vector<double> make_window(WindowKind kind, std::size_t n) {
  std::vector<double> w(n, 1.0);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (kind) {
      case WindowKind::hann: w[i] = 0.5 - 0.5 * std::cos(step * i); break;
      case WindowKind::hamming: w[i] = 0.54 - 0.46 * std::cos(step * i); break;
      case WindowKind::rectangular: break;
    }
  }
  return w;
}

ComplexSpectrogram stft(std::span<const double> channel, const FeatureConfig& config) {
  config.validate();
  if (channel.size() < config.n_fft) {
    throw Error(fmt::format("insufficient samples: {} < n_fft {}", channel.size(),
                            config.n_fft));
  }
  const std::size_t frames = config.num_frames(channel.size());
  ComplexSpectrogram spec(frames, config.n_fft, config.hop, config.sample_rate);
  const auto window = make_window(config.window, config.n_fft);
  RealFft fft(config.n_fft);
  std::vector<double> buf(config.n_fft);
  for (std::size_t m = 0; m < frames; ++m) {
    const double* x = channel.data() + m * config.hop;
    for (std::size_t i = 0; i < config.n_fft; ++i) buf[i] = x[i] * window[i];
    fft.forward(buf, spec.frame(m));
  }
  return spec;
}

}  // namespace biseld::dsp
