#pragma once

#include <compare>
#include <string>
#include <vector>

namespace biseld {

/// Source direction in degrees. Azimuth is positive to the right of the
/// listener and normalized into (-180, 180]; elevation is in [-90, 90].
class Direction {
 public:
  Direction() = default;
  Direction(double azimuth_deg, double elevation_deg);

  double azimuth_deg() const { return azimuth_deg_; }
  double elevation_deg() const { return elevation_deg_; }

  /// Filesystem-friendly tag such as "az+090_el-30".
  std::string tag() const;

  friend auto operator<=>(const Direction&, const Direction&) = default;

 private:
  double azimuth_deg_ = 0.0;
  double elevation_deg_ = 0.0;
};

double normalize_azimuth_deg(double azimuth_deg);

/// Azimuths -180..+180 in `azimuth_step_deg` steps (duplicates removed after
/// normalization) crossed with `elevations_deg`, ordered by elevation then
/// azimuth.
std::vector<Direction> make_direction_grid(double azimuth_step_deg,
                                           const std::vector<double>& elevations_deg);

/// 12 azimuths x {-30, 0, 30, 60} elevations = 48 directions.
std::vector<Direction> binaural_set_grid();

/// Elevation-0 members of `grid`.
std::vector<Direction> horizontal_subgrid(const std::vector<Direction>& grid);
/// Azimuth-0 (front median plane) members of `grid`.
std::vector<Direction> median_subgrid(const std::vector<Direction>& grid);

}  // namespace biseld
