#include "biseld/dsp/convolve.hpp"

#include <algorithm>
#include <complex>

#include "biseld/dsp/fft.hpp"
#include "biseld/error.hpp"

namespace biseld::dsp {

namespace {
void require_nonempty(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error("convolution inputs must be nonempty");
}
}  // namespace

std::vector<double> convolve_direct(std::span<const double> signal,
                                    std::span<const double> ir) {
  require_nonempty(signal, ir);
  std::vector<double> out(signal.size() + ir.size() - 1, 0.0);
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double x = signal[i];
    if (x == 0.0) continue;
    double* y = out.data() + i;
    for (std::size_t j = 0; j < ir.size(); ++j) y[j] += x * ir[j];
  }
  return out;
}

std::vector<double> convolve_fft(std::span<const double> signal,
                                 std::span<const double> ir) {
  require_nonempty(signal, ir);
  const std::size_t len = signal.size() + ir.size() - 1;
  const std::size_t n = next_pow2(len);
  RealFft fft(n);
  std::vector<std::complex<double>> a(fft.num_bins());
  std::vector<std::complex<double>> b(fft.num_bins());
  fft.forward(signal, a);
  fft.forward(ir, b);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  std::vector<double> full(n);
  fft.inverse(a, full);
  std::vector<double> out(len);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < len; ++i) out[i] = full[i] * scale;
  return out;
}

std::vector<double> convolve(std::span<const double> signal, std::span<const double> ir) {
  const std::size_t shorter = std::min(signal.size(), ir.size());
  if (shorter <= 64) return convolve_direct(signal, ir);
  return convolve_fft(signal, ir);
}

}  // namespace biseld::dsp
