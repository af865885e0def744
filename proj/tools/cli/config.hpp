#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "biseld/dsp/feature_config.hpp"
#include "biseld/eval/metrics.hpp"
#include "biseld/scene/dataset.hpp"

namespace biseld::cli {

/// Everything a command can be configured with. The config file is one flat
/// JSON object whose keys are the field names below (FeatureConfig and
/// DatasetSpec keys included); command-line flags are applied afterwards.
struct CliConfig {
  dsp::FeatureConfig feature;
  scene::DatasetSpec dataset;
  eval::EvalOptions eval;
  double activity_threshold = 0.5;
  double label_hop_s = 0.1;
  std::optional<std::filesystem::path> hrir_manifest;
  std::optional<std::filesystem::path> events_dir;
  double prtf_window_ms = 2.0;
  unsigned jobs = 1;

  /// Frames per mixture for evaluation: round(mixture_duration_s / label_hop_s).
  std::size_t label_frames() const;
  nlohmann::ordered_json to_json() const;
};

/// Applies the keys present in `j` on top of `config`. Relative paths are
/// taken relative to `base_dir` (the directory of the file `j` came from).
void merge_config(CliConfig& config, const nlohmann::json& j,
                  const std::filesystem::path& base_dir = {});
/// Reads a JSON file; throws biseld::IoError naming the path.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace biseld::cli
