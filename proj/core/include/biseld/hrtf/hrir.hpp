#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <vector>

#include "biseld/hrtf/direction.hpp"

namespace biseld::hrtf {

/// Left/right head-related impulse responses for one direction. Both ears
/// share a length of at least 32 taps, all taps are finite and each ear has
/// at least one nonzero tap.
class Hrir {
 public:
  static constexpr std::size_t kMinLength = 32;

  Hrir(Direction direction, std::vector<double> left, std::vector<double> right,
       int sample_rate);

  const Direction& direction() const { return direction_; }
  const std::vector<double>& left() const { return left_; }
  const std::vector<double>& right() const { return right_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t length() const { return left_.size(); }

  /// Unit impulse at tap 0 in both ears.
  static Hrir identity(Direction direction, int sample_rate, std::size_t length = kMinLength);

 private:
  Direction direction_;
  std::vector<double> left_;
  std::vector<double> right_;
  int sample_rate_;
};

struct GridDescription {
  double azimuth_step_deg = 0.0;  // 0 when fewer than two azimuths
  std::vector<double> elevations_deg;
};

/// Read-only collection of HRIRs sharing one sample rate and length.
class HrirSet {
 public:
  explicit HrirSet(int sample_rate) : sample_rate_(sample_rate) {}

  /// Throws on duplicate direction or rate/length mismatch.
  void add(Hrir hrir);

  const Hrir& at(const Direction& direction) const;
  bool contains(const Direction& direction) const { return entries_.contains(direction); }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int sample_rate() const { return sample_rate_; }
  std::size_t length() const { return length_; }
  std::vector<Direction> directions() const;
  GridDescription grid() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

 private:
  int sample_rate_;
  std::size_t length_ = 0;
  std::map<Direction, Hrir> entries_;
};

/// Loads an `azimuth_deg,elevation_deg,file` manifest. WAV paths are
/// relative to the manifest's directory; channel 0 is the left ear. Every
/// response is resampled to `sample_rate` and zero-padded to the longest.
HrirSet load_hrir_set(const std::filesystem::path& manifest_path, int sample_rate);

/// Writes one stereo WAV per direction plus `hrirs.csv`; returns the
/// manifest path.
std::filesystem::path save_hrir_set(const HrirSet& set, const std::filesystem::path& dir);

}  // namespace biseld::hrtf
