#pragma once

#include <cstddef>

#include "biseld/hrtf/hrir.hpp"

namespace biseld::hrtf {

/// Rigid spherical head with far-field Woodworth delays and a Brown-Duda
/// style one-pole/one-zero head-shadow filter per ear. A stand-in for
/// measured HRIRs with closed-form ground truth; it has no pinna notches.
struct SphericalHeadModel {
  double head_radius_m = 0.0875;
  double speed_of_sound = 343.0;
  std::size_t length = 256;
};

/// Angle of the source from the median plane, in radians, signed like the
/// azimuth: asin(cos(el) * sin(az)).
double lateral_angle_rad(const Direction& direction);

/// (a / c) * (theta + sin theta) with theta the lateral angle; positive for
/// sources on the right.
double woodworth_itd_s(const Direction& direction, const SphericalHeadModel& model = {});

/// Deterministic synthetic HRIR. Mirrored directions (az, -az) produce
/// exactly swapped ears.
Hrir synth_spherical_hrir(const Direction& direction, int sample_rate,
                          const SphericalHeadModel& model = {});

HrirSet synth_spherical_set(const std::vector<Direction>& directions, int sample_rate,
                            const SphericalHeadModel& model = {});

}  // namespace biseld::hrtf
