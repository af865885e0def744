#include "biseld/hrtf/hrir.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::hrtf {

namespace {
void check_ear(const std::vector<double>& ear, const char* name, const Direction& d) {
  bool nonzero = false;
  for (double x : ear) {
    if (!std::isfinite(x)) {
      throw Error(fmt::format("HRIR {} {} ear has a non-finite tap", d.tag(), name));
    }
    nonzero = nonzero || x != 0.0;
  }
  if (!nonzero) throw Error(fmt::format("degenerate HRIR {}: {} ear is all zero", d.tag(), name));
}
}  // namespace

Hrir::Hrir(Direction direction, std::vector<double> left, std::vector<double> right,
           int sample_rate)
    : direction_(direction), left_(std::move(left)), right_(std::move(right)),
      sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) throw Error("HRIR sample rate must be positive");
  if (left_.size() != right_.size()) {
    throw Error(fmt::format("HRIR {}: ears differ in length ({} vs {})", direction_.tag(),
                            left_.size(), right_.size()));
  }
  if (left_.size() < kMinLength) {
    throw Error(fmt::format("HRIR {}: {} taps, need at least {}", direction_.tag(),
                            left_.size(), kMinLength));
  }
  check_ear(left_, "left", direction_);
  check_ear(right_, "right", direction_);
}

Hrir Hrir::identity(Direction direction, int sample_rate, std::size_t length) {
  std::vector<double> ear(std::max(length, kMinLength), 0.0);
  ear[0] = 1.0;
  return Hrir(direction, ear, ear, sample_rate);
}

void HrirSet::add(Hrir hrir) {
  if (hrir.sample_rate() != sample_rate_) {
    throw Error(fmt::format("HRIR {} at {} Hz does not match set rate {} Hz",
                            hrir.direction().tag(), hrir.sample_rate(), sample_rate_));
  }
  if (!entries_.empty() && hrir.length() != length_) {
    throw Error(fmt::format("HRIR {} has {} taps, set uses {}", hrir.direction().tag(),
                            hrir.length(), length_));
  }
  const Direction d = hrir.direction();
  if (entries_.contains(d)) {
    throw Error(fmt::format("duplicate direction (azimuth {}, elevation {})", d.azimuth_deg(),
                            d.elevation_deg()));
  }
  length_ = hrir.length();
  entries_.emplace(d, std::move(hrir));
}

const Hrir& HrirSet::at(const Direction& direction) const {
  const auto it = entries_.find(direction);
  if (it == entries_.end()) {
    throw Error(fmt::format("no HRIR for direction (azimuth {}, elevation {})",
                            direction.azimuth_deg(), direction.elevation_deg()));
  }
  return it->second;
}

std::vector<Direction> HrirSet::directions() const {
  std::vector<Direction> out;
  out.reserve(entries_.size());
  for (const auto& [d, _] : entries_) out.push_back(d);
  return out;
}

GridDescription HrirSet::grid() const {
  std::vector<double> az, el;
  for (const auto& [d, _] : entries_) {
    az.push_back(d.azimuth_deg());
    el.push_back(d.elevation_deg());
  }
  std::sort(az.begin(), az.end());
  az.erase(std::unique(az.begin(), az.end()), az.end());
  std::sort(el.begin(), el.end());
  el.erase(std::unique(el.begin(), el.end()), el.end());
  GridDescription g;
  g.elevations_deg = el;
  for (std::size_t i = 1; i < az.size(); ++i) {
    const double step = az[i] - az[i - 1];
    if (g.azimuth_step_deg == 0.0 || step < g.azimuth_step_deg) g.azimuth_step_deg = step;
  }
  return g;
}

}  // namespace biseld::hrtf
