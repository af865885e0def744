#pragma once

#include <span>
#include <vector>

namespace biseld::dsp {

/// Second-order IIR section (RBJ audio-EQ cookbook designs), a0 normalized
/// to 1.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;

  static Biquad notch(double f0_hz, double q, int sample_rate);
  static Biquad bandpass(double f0_hz, double q, int sample_rate);
  static Biquad peaking(double f0_hz, double q, double gain_db, int sample_rate);

  /// Direct form I from zero initial state.
  std::vector<double> apply(std::span<const double> input) const;
};

}  // namespace biseld::dsp
