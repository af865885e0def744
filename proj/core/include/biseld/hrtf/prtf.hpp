#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "biseld/hrtf/hrir.hpp"

namespace biseld::hrtf {

struct SpectralExtremum {
  double freq_hz = 0.0;
  double level_db = 0.0;
  double prominence_db = 0.0;
  std::string label;  // P1, P2, ... or N1, N2, ...
};

struct PrtfSpectrum {
  std::vector<double> freqs_hz;
  std::vector<double> magnitude_db;
  std::vector<SpectralExtremum> peaks;
  std::vector<SpectralExtremum> notches;
};

struct ExtremaOptions {
  double prominence_db = 3.0;
  double band_lo_hz = 3000.0;
  double band_hi_hz = 16000.0;
};

/// Strict local maxima/minima inside the band whose prominence (height above
/// the higher of the two surrounding bases, as in topographic prominence)
/// reaches `prominence_db`. Replaces any existing peaks/notches.
PrtfSpectrum find_peaks_notches(PrtfSpectrum prtf, const ExtremaOptions& options = {});

/// Per ear: Hann window of `window_ms` centred on the absolute-maximum tap
/// (truncated at the array edges), zero-padded FFT of at least 4096 points,
/// magnitude in dB, then find_peaks_notches.
std::pair<PrtfSpectrum, PrtfSpectrum> extract_prtf(const Hrir& hrir, double window_ms = 2.0,
                                                   const ExtremaOptions& options = {});

/// The windowed early segment of one ear, before the FFT.
std::vector<double> prtf_window_segment(const std::vector<double>& ear, int sample_rate,
                                        double window_ms);

/// `freq_hz,left_db,right_db`.
void write_prtf_csv(const std::filesystem::path& path, const PrtfSpectrum& left,
                    const PrtfSpectrum& right);
nlohmann::json prtf_extrema_json(const PrtfSpectrum& left, const PrtfSpectrum& right);

}  // namespace biseld::hrtf
