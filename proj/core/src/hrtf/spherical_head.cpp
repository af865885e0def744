#include "biseld/hrtf/spherical_head.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::hrtf {

namespace {

constexpr double kPi = std::numbers::pi;
// Brown-Duda head-shadow constants: minimum zero/pole ratio and the
// incidence angle (from the ear axis) where it is reached.
constexpr double kAlphaMin = 0.1;
constexpr double kThetaMinDeg = 150.0;
constexpr double kFracDelayHalfWidth = 16.0;
constexpr double kLeadInSamples = 24.0;

double deg2rad(double deg) { return deg * kPi / 180.0; }

// Magnitude of the lateral angle; depends on |azimuth| only so mirrored
// directions share bit-identical ear parameters.
double lateral_magnitude(const Direction& d) {
  const double s = std::cos(deg2rad(d.elevation_deg())) * std::sin(deg2rad(std::abs(d.azimuth_deg())));
  return std::asin(std::clamp(s, -1.0, 1.0));
}

std::vector<double> fractional_delay(double delay_samples, std::size_t length) {
  std::vector<double> h(length, 0.0);
  for (std::size_t n = 0; n < length; ++n) {
    const double x = static_cast<double>(n) - delay_samples;
    if (std::abs(x) >= kFracDelayHalfWidth) continue;
    const double sinc = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    const double window = 0.5 + 0.5 * std::cos(kPi * x / kFracDelayHalfWidth);
    h[n] = sinc * window;
  }
  return h;
}

// One-pole/one-zero shelf (1 + alpha s / 2w0) / (1 + s / 2w0), bilinear.
// alpha > 1 boosts highs (ipsilateral), alpha < 1 cuts them (contralateral).
std::vector<double> head_shadow(const std::vector<double>& x, double incidence_rad,
                                const SphericalHeadModel& model, int sample_rate) {
  const double incidence_deg = incidence_rad * 180.0 / kPi;
  const double alpha = (1.0 + kAlphaMin / 2.0) +
                       (1.0 - kAlphaMin / 2.0) * std::cos(incidence_deg / kThetaMinDeg * kPi);
  const double w0 = model.speed_of_sound / model.head_radius_m;
  const double k = sample_rate / w0;
  const double b0 = (1.0 + alpha * k) / (1.0 + k);
  const double b1 = (1.0 - alpha * k) / (1.0 + k);
  const double a1 = (1.0 - k) / (1.0 + k);
  std::vector<double> y(x.size());
  double x1 = 0.0, y1 = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    y[n] = b0 * x[n] + b1 * x1 - a1 * y1;
    x1 = x[n];
    y1 = y[n];
  }
  return y;
}

}  // namespace

double lateral_angle_rad(const Direction& direction) {
  const double mag = lateral_magnitude(direction);
  return direction.azimuth_deg() < 0.0 ? -mag : mag;
}

double woodworth_itd_s(const Direction& direction, const SphericalHeadModel& model) {
  const double theta = lateral_angle_rad(direction);
  return model.head_radius_m / model.speed_of_sound * (theta + std::sin(theta));
}

Hrir synth_spherical_hrir(const Direction& direction, int sample_rate,
                          const SphericalHeadModel& model) {
  if (sample_rate <= 0) throw Error("spherical head: sample rate must be positive");
  if (!(model.head_radius_m > 0.0 && model.speed_of_sound > 0.0)) {
    throw Error("spherical head: radius and speed of sound must be positive");
  }
  const double a_over_c = model.head_radius_m / model.speed_of_sound;
  const double mag = lateral_magnitude(direction);

  // Per-ear Woodworth delays relative to the head centre; their difference
  // is (a/c)(theta + sin theta).
  const double ipsi_delay = -a_over_c * std::sin(mag);
  const double contra_delay = a_over_c * mag;
  const double base = kLeadInSamples + a_over_c * sample_rate;
  const double needed = base + contra_delay * sample_rate + kFracDelayHalfWidth + 1.0;
  if (static_cast<double>(model.length) < needed) {
    throw Error(fmt::format("spherical head: {} taps too short, need {}", model.length,
                            static_cast<int>(std::ceil(needed))));
  }

  auto ipsi = head_shadow(fractional_delay(base + ipsi_delay * sample_rate, model.length),
                          kPi / 2.0 - mag, model, sample_rate);
  auto contra = head_shadow(fractional_delay(base + contra_delay * sample_rate, model.length),
                            kPi / 2.0 + mag, model, sample_rate);
  if (direction.azimuth_deg() < 0.0) {
    return Hrir(direction, std::move(ipsi), std::move(contra), sample_rate);
  }
  return Hrir(direction, std::move(contra), std::move(ipsi), sample_rate);
}

HrirSet synth_spherical_set(const std::vector<Direction>& directions, int sample_rate,
                            const SphericalHeadModel& model) {
  HrirSet set(sample_rate);
  for (const auto& d : directions) set.add(synth_spherical_hrir(d, sample_rate, model));
  return set;
}

}  // namespace biseld::hrtf
