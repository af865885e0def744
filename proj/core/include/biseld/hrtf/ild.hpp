#pragma once

#include <optional>
#include <vector>

#include "biseld/hrtf/hrir.hpp"

namespace biseld::hrtf {

struct IldSpectrum {
  std::vector<double> freqs_hz;
  /// 20 log10 |H_R / H_L| per bin; nullopt where either ear's magnitude is
  /// below 1e-12 of that ear's maximum.
  std::vector<std::optional<double>> db;
};

/// Narrowband ILD of the full responses, FFT zero-padded to the next power
/// of two >= 4 * length.
IldSpectrum ild_spectrum(const Hrir& hrir);

}  // namespace biseld::hrtf
