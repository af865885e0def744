#include "biseld/hrtf/prtf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <fmt/format.h>

#include "biseld/dsp/fft.hpp"
#include "biseld/error.hpp"
#include "biseld/util/csv.hpp"

namespace biseld::hrtf {

namespace {

constexpr std::size_t kMinPrtfFft = 4096;

// Height of x[i] above the higher of the lowest points reached walking left
// and right until the curve rises above x[i] (or an edge is hit).
double prominence(const std::vector<double>& x, std::size_t i) {
  double left_min = x[i];
  for (std::size_t j = i; j-- > 0;) {
    if (x[j] > x[i]) break;
    left_min = std::min(left_min, x[j]);
  }
  double right_min = x[i];
  for (std::size_t j = i + 1; j < x.size(); ++j) {
    if (x[j] > x[i]) break;
    right_min = std::min(right_min, x[j]);
  }
  return x[i] - std::max(left_min, right_min);
}

std::vector<SpectralExtremum> find_maxima(const std::vector<double>& freqs,
                                          const std::vector<double>& values,
                                          const ExtremaOptions& options, double sign,
                                          char prefix) {
  std::vector<double> x(values.size());
  std::transform(values.begin(), values.end(), x.begin(), [&](double v) { return sign * v; });
  std::vector<SpectralExtremum> out;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (freqs[i] < options.band_lo_hz || freqs[i] > options.band_hi_hz) continue;
    if (!(x[i] > x[i - 1] && x[i] > x[i + 1])) continue;
    const double p = prominence(x, i);
    if (p < options.prominence_db) continue;
    out.push_back({freqs[i], values[i], p, fmt::format("{}{}", prefix, out.size() + 1)});
  }
  return out;
}

PrtfSpectrum ear_prtf(const std::vector<double>& ear, int sample_rate, double window_ms,
                      const ExtremaOptions& options) {
  const auto segment = prtf_window_segment(ear, sample_rate, window_ms);
  const std::size_t n = std::max(kMinPrtfFft, dsp::next_pow2(segment.size()));
  dsp::RealFft fft(n);
  std::vector<std::complex<double>> spectrum(fft.num_bins());
  fft.forward(segment, spectrum);
  double max_mag = 0.0;
  for (const auto& c : spectrum) max_mag = std::max(max_mag, std::abs(c));
  PrtfSpectrum prtf;
  prtf.freqs_hz.resize(spectrum.size());
  prtf.magnitude_db.resize(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    prtf.freqs_hz[k] = static_cast<double>(k) * sample_rate / static_cast<double>(n);
    prtf.magnitude_db[k] = 20.0 * std::log10(std::max(std::abs(spectrum[k]), 1e-12 * max_mag));
  }
  return find_peaks_notches(std::move(prtf), options);
}

}  // namespace

PrtfSpectrum find_peaks_notches(PrtfSpectrum prtf, const ExtremaOptions& options) {
  if (prtf.freqs_hz.size() != prtf.magnitude_db.size()) {
    throw Error("PRTF frequency and magnitude arrays differ in length");
  }
  prtf.peaks = find_maxima(prtf.freqs_hz, prtf.magnitude_db, options, 1.0, 'P');
  prtf.notches = find_maxima(prtf.freqs_hz, prtf.magnitude_db, options, -1.0, 'N');
  return prtf;
}

std::vector<double> prtf_window_segment(const std::vector<double>& ear, int sample_rate,
                                        double window_ms) {
  const auto length = static_cast<std::size_t>(std::lround(window_ms * sample_rate / 1000.0));
  if (length < 8 || length > ear.size()) {
    throw Error(fmt::format("PRTF window of {} samples must be in [8, {}]", length, ear.size()));
  }
  std::size_t peak = 0;
  for (std::size_t i = 1; i < ear.size(); ++i) {
    if (std::abs(ear[i]) > std::abs(ear[peak])) peak = i;
  }
  if (ear[peak] == 0.0) throw Error("degenerate HRIR: ear is all zero");
  // Periodic Hann, so the tap at length/2 (the peak) has weight exactly 1.
  std::vector<double> segment(length, 0.0);
  const auto start = static_cast<std::ptrdiff_t>(peak) - static_cast<std::ptrdiff_t>(length / 2);
  for (std::size_t j = 0; j < length; ++j) {
    const std::ptrdiff_t idx = start + static_cast<std::ptrdiff_t>(j);
    if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(ear.size())) continue;
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * j / static_cast<double>(length));
    segment[j] = ear[static_cast<std::size_t>(idx)] * w;
  }
  return segment;
}

std::pair<PrtfSpectrum, PrtfSpectrum> extract_prtf(const Hrir& hrir, double window_ms,
                                                   const ExtremaOptions& options) {
  return {ear_prtf(hrir.left(), hrir.sample_rate(), window_ms, options),
          ear_prtf(hrir.right(), hrir.sample_rate(), window_ms, options)};
}

void write_prtf_csv(const std::filesystem::path& path, const PrtfSpectrum& left,
                    const PrtfSpectrum& right) {
  if (left.freqs_hz != right.freqs_hz) throw Error("PRTF ears use different frequency grids");
  std::string text = "freq_hz,left_db,right_db\n";
  for (std::size_t k = 0; k < left.freqs_hz.size(); ++k) {
    text += fmt::format("{:.4f},{:.6f},{:.6f}\n", left.freqs_hz[k], left.magnitude_db[k],
                        right.magnitude_db[k]);
  }
  util::write_text(path, text);
}

nlohmann::json prtf_extrema_json(const PrtfSpectrum& left, const PrtfSpectrum& right) {
  const auto list = [](const std::vector<SpectralExtremum>& items) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : items) {
      arr.push_back({{"label", e.label},
                     {"freq_hz", e.freq_hz},
                     {"level_db", e.level_db},
                     {"prominence_db", e.prominence_db}});
    }
    return arr;
  };
  return {{"left", {{"peaks", list(left.peaks)}, {"notches", list(left.notches)}}},
          {"right", {{"peaks", list(right.peaks)}, {"notches", list(right.notches)}}}};
}

}  // namespace biseld::hrtf
