#include <algorithm>

#include <fmt/format.h>

#include "biseld/error.hpp"
#include "biseld/hrtf/spherical_head.hpp"
#include "biseld/scene/dataset.hpp"
#include "cli/commands.hpp"

namespace biseld::cli {

namespace fs = std::filesystem;

namespace {

/// `<events_dir>/<class_id>/*.wav`, taken in name order.
scene::EventStore load_event_dir(const fs::path& dir, const scene::DatasetSpec& spec,
                                 int sample_rate) {
  scene::EventStore store;
  for (int c = 0; c < spec.classes; ++c) {
    const fs::path class_dir = dir / std::to_string(c);
    if (!fs::is_directory(class_dir)) {
      throw IoError(fmt::format("event directory '{}' does not exist", class_dir.string()));
    }
    std::vector<fs::path> wavs;
    for (const auto& e : fs::directory_iterator(class_dir)) {
      if (e.path().extension() == ".wav") wavs.push_back(e.path());
    }
    std::sort(wavs.begin(), wavs.end());
    if (wavs.size() < static_cast<std::size_t>(spec.samples_per_class)) {
      throw Error(fmt::format("insufficient events: '{}' has {} of {} WAVs", class_dir.string(),
                              wavs.size(), spec.samples_per_class));
    }
    for (int s = 0; s < spec.samples_per_class; ++s) {
      store.add({c, s}, scene::load_event_wav(wavs[static_cast<std::size_t>(s)], c, sample_rate));
    }
  }
  return store;
}

}  // namespace

void cmd_synth(const SynthArgs& args, CliConfig config, std::ostream& out) {
  const scene::DatasetSpec& spec = config.dataset;
  spec.validate();
  const int sr = config.feature.sample_rate;
  const scene::EventStore events = config.events_dir
                                        ? load_event_dir(*config.events_dir, spec, sr)
                                        : scene::make_surrogate_store(spec, sr);
  const auto mode = args.dry_run ? scene::GenerateMode::dry_run : scene::GenerateMode::full;
  hrtf::HrirSet hrirs(sr);
  if (mode == scene::GenerateMode::full) {
    hrirs = config.hrir_manifest ? hrtf::load_hrir_set(*config.hrir_manifest, sr)
                                 : hrtf::synth_spherical_set(spec.grid(), sr);
  }

  auto effective = config.to_json();
  effective["spec_file"] = args.spec_file.string();
  effective["jobs"] = config.jobs;
  fs::create_directories(args.out_dir);
  const auto manifest =
      scene::generate_dataset(spec, events, hrirs, args.out_dir, mode, effective, config.jobs);

  out << fmt::format("{:<8} {:>9} {:>11}\n", "split", "mixtures", "length_s");
  std::size_t total = 0;
  double length = 0.0;
  for (const auto& s : manifest.splits) {
    out << fmt::format("{:<8} {:>9} {:>11.1f}\n", s.name, s.count, s.length_s);
    total += s.count;
    length += s.length_s;
  }
  out << fmt::format("{:<8} {:>9} {:>11.1f}\n", "total", total, length);
  out << fmt::format("content_hash {}\n", manifest.content_hash);
}

}  // namespace biseld::cli
