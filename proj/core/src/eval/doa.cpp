#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "biseld/error.hpp"
#include "biseld/eval/doa.hpp"

namespace biseld::eval {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}  // namespace

Vec3 direction_to_vector(const Direction& d) {
  const double az = d.azimuth_deg() * kDegToRad;
  const double el = d.elevation_deg() * kDegToRad;
  return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

Direction vector_to_direction(const Vec3& v) {
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(norm > 0.0)) throw Error("cannot take the direction of a zero vector");
  const double el = std::asin(std::clamp(v[2] / norm, -1.0, 1.0)) * kRadToDeg;
  const double az = std::atan2(v[1], v[0]) * kRadToDeg;
  return Direction(az, el);
}

double angular_distance(const Direction& a, const Direction& b) {
  const Vec3 u = direction_to_vector(a), w = direction_to_vector(b);
  const double dot = u[0] * w[0] + u[1] * w[1] + u[2] * w[2];
  const double cx = u[1] * w[2] - u[2] * w[1];
  const double cy = u[2] * w[0] - u[0] * w[2];
  const double cz = u[0] * w[1] - u[1] * w[0];
  // atan2 stays accurate near 0 and 180 degrees where acos does not.
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot) * kRadToDeg;
}

DoaFrameGrid::DoaFrameGrid(std::size_t frames, std::size_t classes, double frame_hop_s)
    : frames_(frames), classes_(classes), hop_s_(frame_hop_s), data_(frames * classes, Vec3{}) {
  if (classes == 0) throw Error("DOA grid needs at least one class");
  if (!(frame_hop_s > 0.0)) throw Error("frame hop must be positive");
}

void DoaFrameGrid::set(std::size_t frame, std::size_t cls, const Vec3& v) {
  if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2])) {
    throw Error(fmt::format("non-finite DOA vector at frame {}, class {}", frame, cls));
  }
  data_.at(frame * classes_ + cls) = v;
}

FrameDetection::FrameDetection(std::size_t frames, std::size_t classes, double frame_hop_s)
    : frames_(frames), classes_(classes), hop_s_(frame_hop_s), cells_(frames * classes) {
  if (classes == 0) throw Error("detection needs at least one class");
  if (!(frame_hop_s > 0.0)) throw Error("frame hop must be positive");
}

FrameDetection decode_frames(const DoaFrameGrid& grid, double threshold) {
  FrameDetection out(grid.frames(), grid.classes(), grid.frame_hop_s());
  for (std::size_t m = 0; m < grid.frames(); ++m) {
    for (std::size_t c = 0; c < grid.classes(); ++c) {
      const Vec3& v = grid.at(m, c);
      const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      if (norm > threshold) out.set(m, c, vector_to_direction(v));
    }
  }
  return out;
}

DoaFrameGrid encode_frames(const FrameDetection& detection) {
  DoaFrameGrid grid(detection.frames(), detection.classes(), detection.frame_hop_s());
  for (std::size_t m = 0; m < detection.frames(); ++m) {
    for (std::size_t c = 0; c < detection.classes(); ++c) {
      if (const auto& d = detection.at(m, c)) grid.set(m, c, direction_to_vector(*d));
    }
  }
  return grid;
}

}  // namespace biseld::eval
