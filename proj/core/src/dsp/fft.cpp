#include "biseld/dsp/fft.hpp"

#include <algorithm>
#include <cstring>
#include <mutex>

#include <fftw3.h>

#include "biseld/error.hpp"

namespace biseld::dsp {

namespace {
// FFTW's planner is not reentrant; fftw_execute on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
    fftw_free(real);
    fftw_free(spectrum);
  }
};

RealFft::RealFft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 2) throw Error("FFT size must be at least 2");
  impl_->real = fftw_alloc_real(n);
  impl_->spectrum = fftw_alloc_complex(n / 2 + 1);
  if (!impl_->real || !impl_->spectrum) throw Error("FFT buffer allocation failed");
  std::lock_guard lock(planner_mutex());
  const int ni = static_cast<int>(n);
  // FFTW_ESTIMATE keeps plans (and therefore results) deterministic.
  impl_->forward =
      fftw_plan_dft_r2c_1d(ni, impl_->real, impl_->spectrum, FFTW_ESTIMATE);
  impl_->inverse = fftw_plan_dft_c2r_1d(ni, impl_->spectrum, impl_->real,
                                        FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  if (!impl_->forward || !impl_->inverse) throw Error("FFTW planning failed");
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  if (in.size() > n_ || out.size() < num_bins()) throw Error("FFT buffer size mismatch");
  std::copy(in.begin(), in.end(), impl_->real);
  std::fill(impl_->real + in.size(), impl_->real + n_, 0.0);
  fftw_execute(impl_->forward);
  for (std::size_t k = 0; k < num_bins(); ++k) {
    out[k] = {impl_->spectrum[k][0], impl_->spectrum[k][1]};
  }
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  if (in.size() < num_bins() || out.size() < n_) throw Error("FFT buffer size mismatch");
  for (std::size_t k = 0; k < num_bins(); ++k) {
    impl_->spectrum[k][0] = in[k].real();
    impl_->spectrum[k][1] = in[k].imag();
  }
  fftw_execute(impl_->inverse);
  std::copy(impl_->real, impl_->real + n_, out.begin());
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace biseld::dsp
