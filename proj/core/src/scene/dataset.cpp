#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "biseld/dsp/wav_io.hpp"
#include "biseld/error.hpp"
#include "biseld/scene/dataset.hpp"
#include "biseld/scene/rng.hpp"
#include "biseld/util/csv.hpp"
#include "biseld/util/hash.hpp"
#include "biseld/util/parallel.hpp"

namespace biseld::scene {

namespace fs = std::filesystem;

void DatasetSpec::validate() const {
  if (classes <= 0) throw Error("classes must be positive");
  if (split.train < 0 || split.valid < 0 || split.test < 0) {
    throw Error("split sizes must be non-negative");
  }
  if (split.train + split.valid + split.test != samples_per_class) {
    throw Error(fmt::format("split {}+{}+{} does not sum to samples_per_class {}", split.train,
                            split.valid, split.test, samples_per_class));
  }
  if (!(mixture_duration_s > 0.0)) throw Error("mixture duration must be positive");
  if (classes > slots()) {
    throw Error(fmt::format("{} classes do not fit in {} five-second slots", classes, slots()));
  }
  if (grid().empty()) throw Error("direction grid is empty");
}

std::vector<Direction> DatasetSpec::grid() const {
  if (directions) {
    auto d = *directions;
    std::sort(d.begin(), d.end(), [](const Direction& a, const Direction& b) {
      return std::pair(a.elevation_deg(), a.azimuth_deg()) <
             std::pair(b.elevation_deg(), b.azimuth_deg());
    });
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
  }
  if (!(azimuth_step_deg > 0.0)) throw Error("azimuth step must be positive");
  return make_direction_grid(azimuth_step_deg, elevations_deg);
}

int DatasetSpec::slots() const {
  return static_cast<int>(std::floor(mixture_duration_s / EventSample::kDurationS + 1e-9));
}

void to_json(nlohmann::json& j, const DatasetSpec& spec) {
  j = nlohmann::json{{"classes", spec.classes},
                     {"samples_per_class", spec.samples_per_class},
                     {"split", {{"train", spec.split.train},
                                {"valid", spec.split.valid},
                                {"test", spec.split.test}}},
                     {"azimuth_step_deg", spec.azimuth_step_deg},
                     {"elevations_deg", spec.elevations_deg},
                     {"master_seed", spec.master_seed},
                     {"direction_policy", spec.direction_policy == DirectionPolicy::shared
                                              ? "shared"
                                              : "independent"},
                     {"mixture_duration_s", spec.mixture_duration_s}};
  if (spec.directions) {
    auto arr = nlohmann::json::array();
    for (const auto& d : *spec.directions) arr.push_back({d.azimuth_deg(), d.elevation_deg()});
    j["directions"] = arr;
  }
}

void from_json(const nlohmann::json& j, DatasetSpec& spec) {
  spec.classes = j.value("classes", spec.classes);
  spec.samples_per_class = j.value("samples_per_class", spec.samples_per_class);
  if (j.contains("split")) {
    const auto& s = j.at("split");
    spec.split.train = s.value("train", spec.split.train);
    spec.split.valid = s.value("valid", spec.split.valid);
    spec.split.test = s.value("test", spec.split.test);
  }
  spec.azimuth_step_deg = j.value("azimuth_step_deg", spec.azimuth_step_deg);
  spec.elevations_deg = j.value("elevations_deg", spec.elevations_deg);
  spec.master_seed = j.value("master_seed", spec.master_seed);
  spec.mixture_duration_s = j.value("mixture_duration_s", spec.mixture_duration_s);
  if (j.contains("direction_policy")) {
    const auto p = j.at("direction_policy").get<std::string>();
    if (p == "shared") {
      spec.direction_policy = DirectionPolicy::shared;
    } else if (p == "independent") {
      spec.direction_policy = DirectionPolicy::independent;
    } else {
      throw Error(fmt::format("unknown direction_policy '{}'", p));
    }
  }
  if (j.contains("directions")) {
    std::vector<Direction> dirs;
    for (const auto& d : j.at("directions")) {
      if (!d.is_array() || d.size() != 2) {
        throw Error("directions entries must be [azimuth_deg, elevation_deg]");
      }
      dirs.emplace_back(d[0].get<double>(), d[1].get<double>());
    }
    spec.directions = std::move(dirs);
  }
}

std::string to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::valid: return "valid";
    case Split::test: return "test";
    case Split::test_h: return "test_h";
    case Split::test_v: return "test_v";
  }
  return "train";
}

std::string SplitPlan::mixture_id(std::size_t index) const {
  return fmt::format("{}_{:04d}", to_string(split), index);
}

std::vector<SplitPlan> plan_splits(const DatasetSpec& spec) {
  spec.validate();
  const auto grid = spec.grid();
  auto range = [](int first, int count) {
    std::vector<int> v(static_cast<std::size_t>(count));
    std::iota(v.begin(), v.end(), first);
    return v;
  };
  const auto test_samples = range(spec.split.train + spec.split.valid, spec.split.test);
  return {
      {Split::train, range(0, spec.split.train), grid},
      {Split::valid, range(spec.split.train, spec.split.valid), grid},
      {Split::test, test_samples, grid},
      {Split::test_h, test_samples, horizontal_subgrid(grid)},
      {Split::test_v, test_samples, median_subgrid(grid)},
  };
}

SceneRecipe make_recipe(const DatasetSpec& spec, const SplitPlan& plan, std::size_t index) {
  if (index >= plan.mixture_count()) {
    throw Error(fmt::format("mixture index {} out of range for split {}", index,
                            to_string(plan.split)));
  }
  const std::size_t dirs = plan.directions.size();
  const int sample = plan.sample_indices[index / dirs];
  const Direction& mixture_dir = plan.directions[index % dirs];

  SceneRecipe recipe;
  recipe.duration_s = spec.mixture_duration_s;
  recipe.seed = derive_seed({spec.master_seed, static_cast<std::uint64_t>(plan.split),
                             static_cast<std::uint64_t>(index)});
  Rng rng(recipe.seed);

  // Shuffle slot indices and give the first C of them to classes 0..C-1.
  std::vector<int> slots(static_cast<std::size_t>(spec.slots()));
  std::iota(slots.begin(), slots.end(), 0);
  for (std::size_t i = slots.size(); i > 1; --i) std::swap(slots[i - 1], slots[rng.index(i)]);

  for (int c = 0; c < spec.classes; ++c) {
    Direction d = mixture_dir;
    if (spec.direction_policy == DirectionPolicy::independent) {
      d = plan.directions[rng.index(dirs)];
    }
    recipe.placements.push_back(
        {EventRef{c, sample}, d, slots[static_cast<std::size_t>(c)] * EventSample::kDurationS});
  }
  std::sort(recipe.placements.begin(), recipe.placements.end(),
            [](const Placement& a, const Placement& b) { return a.start_s < b.start_s; });
  return recipe;
}

namespace {

nlohmann::ordered_json recipe_json(const SceneRecipe& recipe) {
  auto placements = nlohmann::ordered_json::array();
  for (const auto& p : recipe.placements) {
    placements.push_back({{"event", p.event.id()},
                          {"class_id", p.event.class_id},
                          {"azimuth_deg", p.direction.azimuth_deg()},
                          {"elevation_deg", p.direction.elevation_deg()},
                          {"start_s", p.start_s}});
  }
  return {{"seed", recipe.seed}, {"duration_s", recipe.duration_s}, {"placements", placements}};
}

}  // namespace

DatasetManifest generate_dataset(const DatasetSpec& spec, const EventStore& events,
                                 const hrtf::HrirSet& hrirs, const fs::path& out_dir,
                                 GenerateMode mode, const nlohmann::ordered_json& effective_config,
                                 unsigned jobs) {
  const auto plans = plan_splits(spec);
  for (int c = 0; c < spec.classes; ++c) {
    for (int s = 0; s < spec.samples_per_class; ++s) {
      if (!events.contains({c, s})) {
        throw Error(fmt::format("insufficient events: class {} has {} of {} samples", c,
                                events.samples_for_class(c), spec.samples_per_class));
      }
    }
  }
  if (mode == GenerateMode::full) {
    for (const auto& d : spec.grid()) {
      if (!hrirs.contains(d)) {
        throw Error(fmt::format("no HRIR for grid direction (azimuth {}, elevation {})",
                                d.azimuth_deg(), d.elevation_deg()));
      }
    }
  }

  struct Job {
    const SplitPlan* plan;
    std::size_t index;
  };
  std::vector<Job> work;
  for (const auto& plan : plans) {
    std::error_code ec;
    fs::create_directories(out_dir / to_string(plan.split) / "labels", ec);
    if (mode == GenerateMode::full) fs::create_directories(out_dir / to_string(plan.split) / "wav", ec);
    if (ec) throw IoError(fmt::format("cannot create '{}': {}", out_dir.string(), ec.message()));
    for (std::size_t i = 0; i < plan.mixture_count(); ++i) work.push_back({&plan, i});
  }

  struct Result {
    SceneRecipe recipe;
    std::string label_text;
  };
  std::vector<Result> results(work.size());
  util::parallel_for(work.size(), jobs, [&](std::size_t w) {
    const auto& [plan, index] = work[w];
    const std::string split = to_string(plan->split);
    const std::string id = plan->mixture_id(index);
    Result r{make_recipe(spec, *plan, index), {}};
    std::vector<EventLabel> labels;
    if (mode == GenerateMode::full) {
      Mixture mix = build_mixture(r.recipe, events, hrirs);
      dsp::write_wav(out_dir / split / "wav" / (id + ".wav"), mix.audio);
      labels = std::move(mix.labels);
    } else {
      labels = recipe_labels(r.recipe, events);
    }
    r.label_text = format_labels(labels);
    util::write_text(out_dir / split / "labels" / (id + ".csv"), r.label_text);
    results[w] = std::move(r);
  });

  DatasetManifest manifest;
  nlohmann::ordered_json& j = manifest.json;
  j["format"] = "biseld-dataset/1";
  j["mode"] = mode == GenerateMode::full ? "full" : "dry_run";
  j["seed"] = spec.master_seed;
  nlohmann::json spec_json = spec;
  j["spec"] = spec_json;
  j["config"] = effective_config;
  auto splits = nlohmann::ordered_json::array();
  util::Fnv1a hash;
  std::size_t w = 0, total_count = 0;
  double total_length = 0.0;
  for (const auto& plan : plans) {
    const std::string split = to_string(plan.split);
    auto mixtures = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < plan.mixture_count(); ++i, ++w) {
      const std::string id = plan.mixture_id(i);
      nlohmann::ordered_json m{{"id", id}, {"labels", split + "/labels/" + id + ".csv"}};
      if (mode == GenerateMode::full) m["wav"] = split + "/wav/" + id + ".wav";
      m["recipe"] = recipe_json(results[w].recipe);
      mixtures.push_back(std::move(m));
      hash.update(results[w].label_text);
    }
    const double length = plan.mixture_count() * spec.mixture_duration_s;
    splits.push_back({{"name", split},
                      {"count", plan.mixture_count()},
                      {"length_s", length},
                      {"directions", plan.directions.size()},
                      {"samples", plan.sample_indices.size()},
                      {"mixtures", std::move(mixtures)}});
    manifest.splits.push_back({split, plan.mixture_count(), length});
    total_count += plan.mixture_count();
    total_length += length;
  }
  j["splits"] = std::move(splits);
  j["totals"] = {{"count", total_count}, {"length_s", total_length}};
  // Run settings (jobs, paths) stay out of the hash.
  auto hashed = j;
  hashed.erase("config");
  hash.update(hashed.dump());
  manifest.content_hash = hash.hex();
  j["content_hash"] = manifest.content_hash;
  util::write_text(out_dir / "manifest.json", j.dump(2) + "\n");
  return manifest;
}

EventStore make_surrogate_store(const DatasetSpec& spec, int sample_rate) {
  EventStore store;
  for (int c = 0; c < spec.classes; ++c) {
    for (int s = 0; s < spec.samples_per_class; ++s) {
      const auto seed = derive_seed({spec.master_seed, 0xe7e47ULL, static_cast<std::uint64_t>(s)});
      store.add({c, s}, synth_surrogate_event(surrogate_kind_for_class(c), c, seed, sample_rate));
    }
  }
  return store;
}

}  // namespace biseld::scene
