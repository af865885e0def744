#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "biseld/hrtf/direction.hpp"

namespace biseld::eval {

using Vec3 = std::array<double, 3>;

/// x = cos(el) cos(az), y = cos(el) sin(az), z = sin(el); azimuth positive
/// to the right.
Vec3 direction_to_vector(const Direction& d);
/// Inverse of direction_to_vector for any nonzero vector (the length is
/// ignored). Throws biseld::Error for the zero vector.
Direction vector_to_direction(const Vec3& v);
/// Great-circle angle in degrees, in [0, 180].
double angular_distance(const Direction& a, const Direction& b);

/// Class-wise DOA vectors per frame (frames x classes x 3).
class DoaFrameGrid {
 public:
  DoaFrameGrid(std::size_t frames, std::size_t classes, double frame_hop_s);

  std::size_t frames() const { return frames_; }
  std::size_t classes() const { return classes_; }
  double frame_hop_s() const { return hop_s_; }
  const Vec3& at(std::size_t frame, std::size_t cls) const { return data_[frame * classes_ + cls]; }
  /// Throws biseld::Error for non-finite components.
  void set(std::size_t frame, std::size_t cls, const Vec3& v);

 private:
  std::size_t frames_;
  std::size_t classes_;
  double hop_s_;
  std::vector<Vec3> data_;
};

/// Per frame and class: the detected direction, or nothing when inactive.
class FrameDetection {
 public:
  FrameDetection(std::size_t frames, std::size_t classes, double frame_hop_s);

  std::size_t frames() const { return frames_; }
  std::size_t classes() const { return classes_; }
  double frame_hop_s() const { return hop_s_; }
  bool active(std::size_t frame, std::size_t cls) const { return at(frame, cls).has_value(); }
  const std::optional<Direction>& at(std::size_t frame, std::size_t cls) const {
    return cells_[frame * classes_ + cls];
  }
  void set(std::size_t frame, std::size_t cls, std::optional<Direction> d) {
    cells_[frame * classes_ + cls] = d;
  }

 private:
  std::size_t frames_;
  std::size_t classes_;
  double hop_s_;
  std::vector<std::optional<Direction>> cells_;
};

inline constexpr double kActivityThreshold = 0.5;

/// Active where |v| > threshold (strictly); direction from the vector.
FrameDetection decode_frames(const DoaFrameGrid& grid, double threshold = kActivityThreshold);
/// Unit vectors for active cells, zeros elsewhere (the training-target form).
DoaFrameGrid encode_frames(const FrameDetection& detection);

}  // namespace biseld::eval
