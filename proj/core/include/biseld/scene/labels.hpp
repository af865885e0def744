#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace biseld::scene {

/// Ground-truth annotation row: class, absolute span in the mixture, and
/// direction in degrees.
struct EventLabel {
  int class_id = 0;
  double onset_s = 0.0;
  double offset_s = 0.0;
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;

  friend bool operator==(const EventLabel&, const EventLabel&) = default;
};

/// Rounds to the 1e-6 s grid the CSV format stores.
double round_to_microseconds(double seconds);

/// Header `class_id,onset_s,offset_s,azimuth_deg,elevation_deg`; times with
/// six decimals, angles in shortest round-trip form.
std::string format_labels(const std::vector<EventLabel>& labels);
std::vector<EventLabel> parse_labels(std::string_view text, const std::string& source_name);

void write_labels(const std::vector<EventLabel>& labels, const std::filesystem::path& path);
/// Throws biseld::IoError with the offending line number on malformed rows.
std::vector<EventLabel> read_labels(const std::filesystem::path& path);

}  // namespace biseld::scene
