#include "biseld/hrtf/ild.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "biseld/dsp/fft.hpp"

namespace biseld::hrtf {

IldSpectrum ild_spectrum(const Hrir& hrir) {
  const std::size_t n = dsp::next_pow2(4 * hrir.length());
  dsp::RealFft fft(n);
  std::vector<std::complex<double>> left(fft.num_bins()), right(fft.num_bins());
  fft.forward(hrir.left(), left);
  fft.forward(hrir.right(), right);

  double max_left = 0.0, max_right = 0.0;
  for (std::size_t k = 0; k < left.size(); ++k) {
    max_left = std::max(max_left, std::abs(left[k]));
    max_right = std::max(max_right, std::abs(right[k]));
  }

  IldSpectrum out;
  out.freqs_hz.resize(left.size());
  out.db.resize(left.size());
  for (std::size_t k = 0; k < left.size(); ++k) {
    out.freqs_hz[k] = static_cast<double>(k) * hrir.sample_rate() / static_cast<double>(n);
    const double l = std::abs(left[k]);
    const double r = std::abs(right[k]);
    if (l < 1e-12 * max_left || r < 1e-12 * max_right) continue;
    out.db[k] = 20.0 * std::log10(r / l);
  }
  return out;
}

}  // namespace biseld::hrtf
