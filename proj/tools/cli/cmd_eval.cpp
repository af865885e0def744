#include <algorithm>

#include <fmt/format.h>

#include "biseld/error.hpp"
#include "biseld/eval/metrics.hpp"
#include "biseld/eval/predictions.hpp"
#include "biseld/scene/labels.hpp"
#include "biseld/util/csv.hpp"
#include "cli/commands.hpp"

namespace biseld::cli {

namespace fs = std::filesystem;

namespace {

struct FilePair {
  std::string name;
  fs::path pred, ref;
};

std::vector<FilePair> pair_files(const fs::path& pred, const fs::path& ref) {
  if (!fs::exists(ref)) throw IoError(fmt::format("reference '{}' does not exist", ref.string()));
  if (!fs::exists(pred)) {
    throw IoError(fmt::format("predictions '{}' do not exist", pred.string()));
  }
  if (!fs::is_directory(ref)) {
    if (fs::is_directory(pred)) {
      throw IoError("--pred is a directory but --ref is a file");
    }
    return {{ref.stem().string(), pred, ref}};
  }
  if (!fs::is_directory(pred)) throw IoError("--ref is a directory but --pred is a file");
  std::vector<FilePair> pairs;
  for (const auto& e : fs::directory_iterator(ref)) {
    if (e.path().extension() != ".csv") continue;
    const fs::path p = pred / e.path().filename();
    if (!fs::exists(p)) {
      throw IoError(fmt::format("no predictions for '{}' (expected '{}')", e.path().string(),
                                p.string()));
    }
    pairs.push_back({e.path().stem().string(), p, e.path()});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const FilePair& a, const FilePair& b) { return a.name < b.name; });
  if (pairs.empty()) throw IoError(fmt::format("no label CSVs in '{}'", ref.string()));
  return pairs;
}

std::string fmt3(const std::optional<double>& v) {
  return v ? fmt::format("{:.3f}", *v) : std::string("n/a");
}

}  // namespace

void cmd_eval(const EvalArgs& args, const CliConfig& config, std::ostream& out) {
  const auto pairs = pair_files(args.pred, args.ref);
  const std::size_t frames = config.label_frames();
  const auto classes = static_cast<std::size_t>(config.dataset.classes);
  const double hop = config.label_hop_s;

  eval::MetricsAccumulator total(config.eval);
  auto files = nlohmann::ordered_json::array();
  for (const auto& fp : pairs) {
    try {
      const auto ref = eval::labels_to_frame_detection(scene::read_labels(fp.ref), frames, hop,
                                                       classes);
      const auto pred = eval::decode_frames(
          eval::read_predictions(fp.pred, frames, classes, hop), config.activity_threshold);
      total.add(ref, pred);
      auto j = eval::evaluate(ref, pred, config.eval).to_json();
      j["name"] = fp.name;
      files.push_back(std::move(j));
    } catch (const IoError&) {
      throw;
    } catch (const Error& e) {
      throw Error(fmt::format("{}: {}", fp.name, e.what()));
    }
  }
  const eval::MetricsReport r = total.report();

  out << fmt::format("{:<12} {:>8}\n", "metric", "value");
  out << fmt::format("{:<12} {:>8}\n", "ER20", fmt3(r.er20));
  out << fmt::format("{:<12} {:>8.3f}\n", "F20", r.f20);
  out << fmt::format("{:<12} {:>8.3f}\n", "LE_CD_deg", r.le_cd_deg);
  out << fmt::format("{:<12} {:>8.3f}\n", "LR_CD", r.lr_cd);
  out << fmt::format("{:<12} {:>8.3f}\n", "SED_error", r.sed_error);
  out << fmt::format("{:<12} {:>8.3f}\n", "DOA_error", r.doa_error);
  out << fmt::format("{:<12} {:>8.3f}\n", "SELD_error", r.seld_error);
  out << fmt::format("files {}\n", pairs.size());

  if (args.report) {
    nlohmann::ordered_json report;
    report["config"] = config.to_json();
    report["aggregate"] = r.to_json();
    report["files"] = std::move(files);
    if (args.report->has_parent_path()) fs::create_directories(args.report->parent_path());
    util::write_text(*args.report, report.dump(2) + "\n");
  }
}

}  // namespace biseld::cli
