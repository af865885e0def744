#include <cmath>

#include <fmt/format.h>

#include "biseld/error.hpp"
#include "biseld/hrtf/direction.hpp"
#include "biseld/scene/labels.hpp"
#include "biseld/util/csv.hpp"

namespace biseld::scene {

double round_to_microseconds(double seconds) {
  return std::round(seconds * 1e6) / 1e6;
}

std::string format_labels(const std::vector<EventLabel>& labels) {
  std::string out = "class_id,onset_s,offset_s,azimuth_deg,elevation_deg\n";
  for (const auto& l : labels) {
    out += fmt::format("{},{:.6f},{:.6f},{},{}\n", l.class_id, l.onset_s, l.offset_s,
                       l.azimuth_deg, l.elevation_deg);
  }
  return out;
}

std::vector<EventLabel> parse_labels(std::string_view text, const std::string& source_name) {
  const auto table = util::parse_csv(text, source_name);
  util::require_header(table, {"class_id", "onset_s", "offset_s", "azimuth_deg", "elevation_deg"},
                       source_name);
  std::vector<EventLabel> labels;
  labels.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    EventLabel l;
    const long long cls = util::parse_int(row.fields[0], source_name, row.line);
    if (cls < 0) throw IoError(fmt::format("{}:{}: negative class id", source_name, row.line));
    l.class_id = static_cast<int>(cls);
    l.onset_s = util::parse_double(row.fields[1], source_name, row.line);
    l.offset_s = util::parse_double(row.fields[2], source_name, row.line);
    l.azimuth_deg = util::parse_double(row.fields[3], source_name, row.line);
    l.elevation_deg = util::parse_double(row.fields[4], source_name, row.line);
    if (l.onset_s < 0.0) throw IoError(fmt::format("{}:{}: negative onset", source_name, row.line));
    if (!(l.offset_s > l.onset_s)) {
      throw IoError(fmt::format("{}:{}: offset < onset", source_name, row.line));
    }
    if (std::abs(l.elevation_deg) > 90.0) {
      throw IoError(fmt::format("{}:{}: elevation out of range", source_name, row.line));
    }
    l.azimuth_deg = normalize_azimuth_deg(l.azimuth_deg);
    labels.push_back(l);
  }
  return labels;
}

void write_labels(const std::vector<EventLabel>& labels, const std::filesystem::path& path) {
  util::write_text(path, format_labels(labels));
}

std::vector<EventLabel> read_labels(const std::filesystem::path& path) {
  return parse_labels(util::read_text(path), path.string());
}

}  // namespace biseld::scene
