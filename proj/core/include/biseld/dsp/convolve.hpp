#pragma once

#include <span>
#include <vector>

namespace biseld::dsp {

/// Full linear convolution, length signal.size() + ir.size() - 1.
/// Picks the direct or the FFT route depending on sizes.
std::vector<double> convolve(std::span<const double> signal, std::span<const double> ir);

std::vector<double> convolve_direct(std::span<const double> signal,
                                    std::span<const double> ir);
std::vector<double> convolve_fft(std::span<const double> signal,
                                 std::span<const double> ir);

}  // namespace biseld::dsp
