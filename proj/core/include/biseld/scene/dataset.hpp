#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biseld/hrtf/direction.hpp"
#include "biseld/hrtf/hrir.hpp"
#include "biseld/scene/mixture.hpp"

namespace biseld::scene {

enum class DirectionPolicy { shared, independent };

struct SplitSizes {
  int train = 14;
  int valid = 3;
  int test = 3;
};

/// Binaural-set layout. The defaults give 12 classes x 20 samples split
/// 14/3/3 over 48 directions (12 azimuths x 4 elevations).
struct DatasetSpec {
  int classes = 12;
  int samples_per_class = 20;
  SplitSizes split;
  double azimuth_step_deg = 30.0;
  std::vector<double> elevations_deg = {-30.0, 0.0, 30.0, 60.0};
  /// Overrides the azimuth/elevation grid when set.
  std::optional<std::vector<Direction>> directions;
  std::uint64_t master_seed = 0;
  DirectionPolicy direction_policy = DirectionPolicy::shared;
  double mixture_duration_s = 60.0;

  void validate() const;
  std::vector<Direction> grid() const;
  /// Number of 5 s slots in a mixture.
  int slots() const;
};

void to_json(nlohmann::json& j, const DatasetSpec& spec);
void from_json(const nlohmann::json& j, DatasetSpec& spec);

enum class Split { train, valid, test, test_h, test_v };
std::string to_string(Split split);

/// One split: which per-class sample indices it draws from and which
/// directions it covers. Mixture i uses sample sample_indices[i / D] of
/// every class at direction i % D (D = directions.size()).
struct SplitPlan {
  Split split;
  std::vector<int> sample_indices;
  std::vector<Direction> directions;

  std::size_t mixture_count() const { return sample_indices.size() * directions.size(); }
  std::string mixture_id(std::size_t index) const;
};

/// train/valid/test on the full grid; test_h (elevation 0) and test_v
/// (azimuth 0) reuse the test samples.
std::vector<SplitPlan> plan_splits(const DatasetSpec& spec);

/// Recipe for one mixture, seeded only by (master_seed, split, index), so
/// any mixture can be regenerated on its own.
SceneRecipe make_recipe(const DatasetSpec& spec, const SplitPlan& plan, std::size_t index);

enum class GenerateMode { full, dry_run };

struct SplitSummary {
  std::string name;
  std::size_t count = 0;
  double length_s = 0.0;
};

struct DatasetManifest {
  nlohmann::ordered_json json;
  std::vector<SplitSummary> splits;
  std::string content_hash;
};

/// Writes `<out_dir>/<split>/labels/<id>.csv` for every mixture (and
/// `<split>/wav/<id>.wav` in full mode) plus `<out_dir>/manifest.json`.
/// `effective_config` is embedded verbatim. Mixtures are built on `jobs`
/// threads; the output does not depend on `jobs`.
DatasetManifest generate_dataset(const DatasetSpec& spec, const EventStore& events,
                                 const hrtf::HrirSet& hrirs,
                                 const std::filesystem::path& out_dir, GenerateMode mode,
                                 const nlohmann::ordered_json& effective_config = {},
                                 unsigned jobs = 1);

/// Surrogate events for every (class, sample) of a DatasetSpec.
EventStore make_surrogate_store(const DatasetSpec& spec, int sample_rate);

}  // namespace biseld::scene
