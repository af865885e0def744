#include <algorithm>
#include <filesystem>
#include <set>

#include <fmt/format.h>

#include "biseld/dsp/resample.hpp"
#include "biseld/dsp/wav_io.hpp"
#include "biseld/error.hpp"
#include "biseld/hrtf/hrir.hpp"
#include "biseld/util/csv.hpp"

namespace biseld::hrtf {

namespace fs = std::filesystem;

HrirSet load_hrir_set(const fs::path& manifest_path, int sample_rate) {
  if (!fs::exists(manifest_path)) {
    throw IoError(fmt::format("HRIR manifest '{}' does not exist", manifest_path.string()));
  }
  const std::string name = manifest_path.string();
  const auto table = util::read_csv(manifest_path);
  util::require_header(table, {"azimuth_deg", "elevation_deg", "file"}, name);
  if (table.rows.empty()) throw IoError(fmt::format("{}: no entries", name));

  struct Loaded {
    Direction direction;
    std::vector<double> left, right;
  };
  std::vector<Loaded> loaded;
  std::set<Direction> seen;
  std::size_t max_len = 0;
  const fs::path base = manifest_path.parent_path();
  for (const auto& row : table.rows) {
    Direction d;
    try {
      d = Direction(util::parse_double(row.fields[0], name, row.line),
                    util::parse_double(row.fields[1], name, row.line));
    } catch (const IoError&) {
      throw;
    } catch (const Error& e) {
      throw IoError(fmt::format("{}:{}: {}", name, row.line, e.what()));
    }
    if (!seen.insert(d).second) {
      throw IoError(fmt::format("{}:{}: duplicate direction (azimuth {}, elevation {})", name,
                                row.line, d.azimuth_deg(), d.elevation_deg()));
    }
    const fs::path wav = base / row.fields[2];
    if (!fs::exists(wav)) {
      throw IoError(fmt::format("{}:{}: missing file '{}'", name, row.line, wav.string()));
    }
    auto clip = dsp::read_wav(wav);
    if (clip.num_channels() != 2) {
      throw IoError(fmt::format("{}:{}: '{}' has {} channel(s); HRIRs must be stereo", name,
                                row.line, wav.string(), clip.num_channels()));
    }
    clip = dsp::resample(clip, sample_rate);
    Loaded entry{d, clip.channels()[0], clip.channels()[1]};
    max_len = std::max(max_len, entry.left.size());
    loaded.push_back(std::move(entry));
  }

  HrirSet set(sample_rate);
  for (auto& entry : loaded) {
    entry.left.resize(max_len, 0.0);
    entry.right.resize(max_len, 0.0);
    set.add(Hrir(entry.direction, std::move(entry.left), std::move(entry.right), sample_rate));
  }
  return set;
}

fs::path save_hrir_set(const HrirSet& set, const fs::path& dir) {
  fs::create_directories(dir);
  std::string manifest = "azimuth_deg,elevation_deg,file\n";
  for (const auto& [d, hrir] : set) {
    const std::string file = d.tag() + ".wav";
    dsp::write_wav(dir / file, dsp::AudioClip::stereo(hrir.left(), hrir.right(), set.sample_rate()));
    manifest += fmt::format("{},{},{}\n", d.azimuth_deg(), d.elevation_deg(), file);
  }
  const fs::path path = dir / "hrirs.csv";
  util::write_text(path, manifest);
  return path;
}

}  // namespace biseld::hrtf
