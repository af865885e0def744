#include "cli/config.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::cli {

std::size_t CliConfig::label_frames() const {
  if (!(label_hop_s > 0.0)) throw Error("label_hop_s must be positive");
  return static_cast<std::size_t>(std::lround(dataset.mixture_duration_s / label_hop_s));
}

nlohmann::ordered_json CliConfig::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::json feature_json = feature;
  nlohmann::json dataset_json = dataset;
  for (auto& [k, v] : feature_json.items()) j[k] = v;
  for (auto& [k, v] : dataset_json.items()) j[k] = v;
  j["segment_s"] = eval.segment_s;
  j["angle_threshold_deg"] = eval.angle_threshold_deg;
  j["granularity"] = eval::to_string(eval.granularity);
  j["activity_threshold"] = activity_threshold;
  j["label_hop_s"] = label_hop_s;
  j["prtf_window_ms"] = prtf_window_ms;
  if (hrir_manifest) j["hrir_manifest"] = hrir_manifest->string();
  if (events_dir) j["events_dir"] = events_dir->string();
  return j;
}

void merge_config(CliConfig& c, const nlohmann::json& j, const std::filesystem::path& base_dir) {
  auto path_value = [&](const char* key) {
    std::filesystem::path p = j.at(key).get<std::string>();
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  };
  if (!j.is_object()) throw IoError("config must be a JSON object");
  from_json(j, c.feature);
  from_json(j, c.dataset);
  if (j.contains("seed")) c.dataset.master_seed = j.at("seed").get<std::uint64_t>();
  c.eval.segment_s = j.value("segment_s", c.eval.segment_s);
  c.eval.angle_threshold_deg = j.value("angle_threshold_deg", c.eval.angle_threshold_deg);
  if (j.contains("granularity")) {
    c.eval.granularity = eval::granularity_from_string(j.at("granularity").get<std::string>());
  }
  c.activity_threshold = j.value("activity_threshold", c.activity_threshold);
  c.label_hop_s = j.value("label_hop_s", c.label_hop_s);
  c.prtf_window_ms = j.value("prtf_window_ms", c.prtf_window_ms);
  if (j.contains("hrir_manifest")) c.hrir_manifest = path_value("hrir_manifest");
  if (j.contains("events_dir")) c.events_dir = path_value("events_dir");
  c.jobs = j.value("jobs", c.jobs);
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }
}

}  // namespace biseld::cli
