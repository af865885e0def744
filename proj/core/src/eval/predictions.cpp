#include <cmath>
#include <set>

#include <fmt/format.h>

#include "biseld/error.hpp"
#include "biseld/eval/predictions.hpp"
#include "biseld/util/csv.hpp"

namespace biseld::eval {

DoaFrameGrid read_predictions(const std::filesystem::path& path, std::size_t frames,
                              std::size_t classes, double frame_hop_s) {
  const std::string name = path.string();
  if (!std::filesystem::exists(path)) {
    throw IoError(fmt::format("predictions file '{}' does not exist", name));
  }
  const auto table = util::read_csv(path);
  util::require_header(table, {"frame_idx", "class_id", "x", "y", "z"}, name);
  DoaFrameGrid grid(frames, classes, frame_hop_s);
  std::set<std::pair<long long, long long>> seen;
  for (const auto& row : table.rows) {
    const long long m = util::parse_int(row.fields[0], name, row.line);
    const long long c = util::parse_int(row.fields[1], name, row.line);
    if (m < 0 || static_cast<std::size_t>(m) >= frames) {
      throw IoError(fmt::format("{}:{}: frame index {} outside 0..{} (frame count mismatch)", name,
                                row.line, m, frames == 0 ? 0 : frames - 1));
    }
    if (c < 0 || static_cast<std::size_t>(c) >= classes) {
      throw IoError(fmt::format("{}:{}: class id {} outside 0..{}", name, row.line, c,
                                classes - 1));
    }
    if (!seen.emplace(m, c).second) {
      throw IoError(fmt::format("{}:{}: duplicate row for frame {}, class {}", name, row.line, m, c));
    }
    Vec3 v{};
    for (int i = 0; i < 3; ++i) {
      v[i] = util::parse_double(row.fields[2 + i], name, row.line);
      if (!std::isfinite(v[i])) {
        throw IoError(fmt::format("{}:{}: non-finite component", name, row.line));
      }
    }
    grid.set(static_cast<std::size_t>(m), static_cast<std::size_t>(c), v);
  }
  return grid;
}

void write_predictions(const std::filesystem::path& path, const DoaFrameGrid& grid) {
  std::string out = "frame_idx,class_id,x,y,z\n";
  for (std::size_t m = 0; m < grid.frames(); ++m) {
    for (std::size_t c = 0; c < grid.classes(); ++c) {
      const Vec3& v = grid.at(m, c);
      if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) continue;
      out += fmt::format("{},{},{},{},{}\n", m, c, v[0], v[1], v[2]);
    }
  }
  util::write_text(path, out);
}

}  // namespace biseld::eval
