#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace biseld::dsp {

/// Real-input FFT of a fixed size. Forward output holds n/2 + 1 bins;
/// inverse is unnormalized (inverse(forward(x)) == n * x).
///
/// An instance owns scratch buffers and must not be shared between
/// threads; construct one per thread instead.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t num_bins() const { return n_ / 2 + 1; }

  /// `in.size()` may be shorter than size(); the rest is zero-padded.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  struct Impl;
  std::size_t n_ = 0;
  std::unique_ptr<Impl> impl_;
};

std::size_t next_pow2(std::size_t n);
bool is_pow2(std::size_t n);

}  // namespace biseld::dsp
