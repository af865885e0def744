#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "biseld/dsp/convolve.hpp"
#include "biseld/error.hpp"
#include "biseld/scene/mixture.hpp"

namespace biseld::scene {

std::string EventRef::id() const {
  return fmt::format("c{:02d}_s{:02d}", class_id, sample_index);
}

void EventStore::add(EventRef ref, EventSample event) {
  if (event.class_id() != ref.class_id) {
    throw Error(fmt::format("event {} carries class {}", ref.id(), event.class_id()));
  }
  if (!events_.emplace(ref, std::move(event)).second) {
    throw Error(fmt::format("duplicate event {}", ref.id()));
  }
}

const EventSample& EventStore::at(const EventRef& ref) const {
  const auto it = events_.find(ref);
  if (it == events_.end()) throw Error(fmt::format("unknown event {}", ref.id()));
  return it->second;
}

std::size_t EventStore::samples_for_class(int class_id) const {
  std::size_t n = 0;
  for (const auto& [ref, ev] : events_) n += ref.class_id == class_id;
  return n;
}

dsp::AudioClip spatialize_event(const EventSample& event, const hrtf::Hrir& hrir) {
  if (event.sample_rate() != hrir.sample_rate()) {
    throw Error(fmt::format("event rate {} Hz differs from HRIR rate {} Hz", event.sample_rate(),
                            hrir.sample_rate()));
  }
  const auto x = event.samples();
  auto left = dsp::convolve(x, hrir.left());
  auto right = dsp::convolve(x, hrir.right());
  left.resize(x.size());
  right.resize(x.size());
  return dsp::AudioClip::stereo(std::move(left), std::move(right), event.sample_rate());
}

namespace {

void check_placement(const Placement& p, double duration_s) {
  if (p.start_s < 0.0 || p.start_s + EventSample::kDurationS > duration_s + 1e-9) {
    throw Error(fmt::format("event {} at {} s does not fit in a {} s mixture", p.event.id(),
                            p.start_s, duration_s));
  }
}

}  // namespace

std::vector<EventLabel> recipe_labels(const SceneRecipe& recipe, const EventStore& events) {
  std::vector<EventLabel> labels;
  labels.reserve(recipe.placements.size());
  for (const auto& p : recipe.placements) {
    check_placement(p, recipe.duration_s);
    const EventSample& ev = events.at(p.event);
    labels.push_back({ev.class_id(), round_to_microseconds(p.start_s + ev.active_onset_s()),
                      round_to_microseconds(p.start_s + ev.active_offset_s()),
                      p.direction.azimuth_deg(), p.direction.elevation_deg()});
  }
  std::stable_sort(labels.begin(), labels.end(), [](const EventLabel& a, const EventLabel& b) {
    return a.onset_s < b.onset_s;
  });
  return labels;
}

Mixture build_mixture(const SceneRecipe& recipe, const EventStore& events,
                      const hrtf::HrirSet& hrirs) {
  const int sr = hrirs.sample_rate();
  const auto length = static_cast<std::size_t>(std::lround(recipe.duration_s * sr));
  std::vector<double> left(length, 0.0), right(length, 0.0);
  for (const auto& p : recipe.placements) {
    check_placement(p, recipe.duration_s);
    const EventSample& ev = events.at(p.event);
    const dsp::AudioClip bin = spatialize_event(ev, hrirs.at(p.direction));
    const auto start = static_cast<std::size_t>(std::lround(p.start_s * sr));
    const auto l = bin.channel(0), r = bin.channel(1);
    const std::size_t n = std::min(l.size(), length - start);
    for (std::size_t i = 0; i < n; ++i) {
      left[start + i] += l[i];
      right[start + i] += r[i];
    }
  }
  return {dsp::AudioClip::stereo(std::move(left), std::move(right), sr),
          recipe_labels(recipe, events)};
}

}  // namespace biseld::scene
