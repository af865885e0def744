#include "biseld/hrtf/direction.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld {

double normalize_azimuth_deg(double azimuth_deg) {
  double a = std::fmod(azimuth_deg, 360.0);
  if (a <= -180.0) a += 360.0;
  if (a > 180.0) a -= 360.0;
  return a + 0.0;  // -0 -> +0
}

Direction::Direction(double azimuth_deg, double elevation_deg) {
  if (!std::isfinite(azimuth_deg) || !std::isfinite(elevation_deg)) {
    throw Error("direction angles must be finite");
  }
  if (elevation_deg < -90.0 || elevation_deg > 90.0) {
    throw Error(fmt::format("elevation {} outside [-90, 90]", elevation_deg));
  }
  azimuth_deg_ = normalize_azimuth_deg(azimuth_deg);
  elevation_deg_ = elevation_deg + 0.0;
}

namespace {
std::string angle_tag(double deg, int width) {
  if (deg == std::round(deg)) {
    return fmt::format("{:+0{}d}", static_cast<int>(deg), width);
  }
  return fmt::format("{:+.3f}", deg);
}
}  // namespace

std::string Direction::tag() const {
  return "az" + angle_tag(azimuth_deg_, 4) + "_el" + angle_tag(elevation_deg_, 3);
}

std::vector<Direction> make_direction_grid(double azimuth_step_deg,
                                           const std::vector<double>& elevations_deg) {
  if (!(azimuth_step_deg > 0.0) || azimuth_step_deg > 360.0) {
    throw Error(fmt::format("azimuth step must be in (0, 360], got {}", azimuth_step_deg));
  }
  const auto steps = static_cast<int>(std::floor(360.0 / azimuth_step_deg + 1e-9));
  std::vector<double> azimuths;
  for (int i = 0; i <= steps; ++i) {
    azimuths.push_back(normalize_azimuth_deg(-180.0 + i * azimuth_step_deg));
  }
  std::sort(azimuths.begin(), azimuths.end());
  azimuths.erase(std::unique(azimuths.begin(), azimuths.end()), azimuths.end());

  std::vector<double> elevations = elevations_deg;
  std::sort(elevations.begin(), elevations.end());
  elevations.erase(std::unique(elevations.begin(), elevations.end()), elevations.end());

  std::vector<Direction> grid;
  for (double el : elevations) {
    for (double az : azimuths) grid.emplace_back(az, el);
  }
  return grid;
}

std::vector<Direction> binaural_set_grid() {
  return make_direction_grid(30.0, {-30.0, 0.0, 30.0, 60.0});
}

std::vector<Direction> horizontal_subgrid(const std::vector<Direction>& grid) {
  std::vector<Direction> out;
  std::copy_if(grid.begin(), grid.end(), std::back_inserter(out),
               [](const Direction& d) { return d.elevation_deg() == 0.0; });
  return out;
}

std::vector<Direction> median_subgrid(const std::vector<Direction>& grid) {
  std::vector<Direction> out;
  std::copy_if(grid.begin(), grid.end(), std::back_inserter(out),
               [](const Direction& d) { return d.azimuth_deg() == 0.0; });
  return out;
}

}  // namespace biseld
