#include <algorithm>

#include <fmt/format.h>

#include "biseld/hrtf/hrir.hpp"
#include "biseld/hrtf/ild.hpp"
#include "biseld/hrtf/itd.hpp"
#include "biseld/hrtf/prtf.hpp"
#include "biseld/hrtf/spherical_head.hpp"
#include "biseld/util/csv.hpp"
#include "biseld/util/hash.hpp"
#include "cli/commands.hpp"

namespace biseld::cli {

namespace fs = std::filesystem;

void cmd_hrtf(const HrtfArgs& args, const CliConfig& config, std::ostream& out) {
  const int sr = config.feature.sample_rate;
  const hrtf::HrirSet set = args.manifest
                                ? hrtf::load_hrir_set(*args.manifest, sr)
                                : hrtf::synth_spherical_set(config.dataset.grid(), sr);

  fs::create_directories(args.out_dir / "prtf");
  auto dirs = set.directions();
  std::sort(dirs.begin(), dirs.end(), [](const Direction& a, const Direction& b) {
    return std::pair(a.elevation_deg(), a.azimuth_deg()) <
           std::pair(b.elevation_deg(), b.azimuth_deg());
  });

  std::string itd_csv = "azimuth_deg,elevation_deg,itd_us\n";
  std::string ild_csv = "azimuth_deg,elevation_deg,freq_hz,ild_db\n";
  for (const auto& d : dirs) {
    const hrtf::Hrir& h = set.at(d);
    itd_csv += fmt::format("{},{},{:.3f}\n", d.azimuth_deg(), d.elevation_deg(),
                           hrtf::estimate_itd(h) * 1e6);
    const auto ild = hrtf::ild_spectrum(h);
    for (std::size_t k = 0; k < ild.freqs_hz.size(); ++k) {
      if (!ild.db[k]) continue;  // undefined where an ear has no energy
      ild_csv += fmt::format("{},{},{:.3f},{:.6f}\n", d.azimuth_deg(), d.elevation_deg(),
                             ild.freqs_hz[k], *ild.db[k]);
    }
    const auto [left, right] = hrtf::extract_prtf(h, config.prtf_window_ms);
    const fs::path stem = args.out_dir / "prtf" / d.tag();
    hrtf::write_prtf_csv(fs::path(stem).concat(".csv"), left, right);
    util::write_text(fs::path(stem).concat(".json"),
                     hrtf::prtf_extrema_json(left, right).dump(2) + "\n");
  }
  util::write_text(args.out_dir / "itd.csv", itd_csv);
  util::write_text(args.out_dir / "ild.csv", ild_csv);

  nlohmann::ordered_json manifest;
  manifest["format"] = "biseld-hrtf/1";
  manifest["source"] = args.manifest ? args.manifest->string() : std::string("spherical");
  manifest["config"] = config.to_json();
  manifest["directions"] = dirs.size();
  manifest["files"] = {"itd.csv", "ild.csv", "prtf/"};
  manifest["content_hash"] = util::content_hash(itd_csv + ild_csv);
  util::write_text(args.out_dir / "manifest.json", manifest.dump(2) + "\n");

  out << fmt::format("analyzed {} directions -> {}\n", dirs.size(), args.out_dir.string());
}

}  // namespace biseld::cli
