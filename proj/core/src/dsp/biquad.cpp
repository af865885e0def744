#include "biseld/dsp/biquad.hpp"

#include <cmath>
#include <numbers>

#include "biseld/error.hpp"

namespace biseld::dsp {

namespace {
struct Raw {
  double b0, b1, b2, a0, a1, a2;
};

Biquad normalize(const Raw& r) {
  return Biquad{r.b0 / r.a0, r.b1 / r.a0, r.b2 / r.a0, r.a1 / r.a0, r.a2 / r.a0};
}

void check(double f0, double q, int sample_rate) {
  if (sample_rate <= 0 || !(f0 > 0.0 && f0 < sample_rate / 2.0) || !(q > 0.0)) {
    throw Error("biquad needs 0 < f0 < sample_rate/2 and q > 0");
  }
}
}  // namespace

Biquad Biquad::notch(double f0_hz, double q, int sample_rate) {
  check(f0_hz, q, sample_rate);
  const double w0 = 2.0 * std::numbers::pi * f0_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  return normalize({1.0, -2.0 * c, 1.0, 1.0 + alpha, -2.0 * c, 1.0 - alpha});
}

Biquad Biquad::bandpass(double f0_hz, double q, int sample_rate) {
  check(f0_hz, q, sample_rate);
  const double w0 = 2.0 * std::numbers::pi * f0_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  // Constant 0 dB peak gain.
  return normalize({alpha, 0.0, -alpha, 1.0 + alpha, -2.0 * c, 1.0 - alpha});
}

Biquad Biquad::peaking(double f0_hz, double q, double gain_db, int sample_rate) {
  check(f0_hz, q, sample_rate);
  const double a = std::pow(10.0, gain_db / 40.0);
  const double w0 = 2.0 * std::numbers::pi * f0_hz / sample_rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double c = std::cos(w0);
  return normalize({1.0 + alpha * a, -2.0 * c, 1.0 - alpha * a, 1.0 + alpha / a,
                    -2.0 * c, 1.0 - alpha / a});
}

std::vector<double> Biquad::apply(std::span<const double> input) const {
  std::vector<double> out(input.size());
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const double x = input[i];
    const double y = b0 * x + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
    out[i] = y;
    x2 = x1;
    x1 = x;
    y2 = y1;
    y1 = y;
  }
  return out;
}

}  // namespace biseld::dsp
