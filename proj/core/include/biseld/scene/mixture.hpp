#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "biseld/dsp/audio_clip.hpp"
#include "biseld/hrtf/direction.hpp"
#include "biseld/hrtf/hrir.hpp"
#include "biseld/scene/event.hpp"
#include "biseld/scene/labels.hpp"

namespace biseld::scene {

struct EventRef {
  int class_id = 0;
  int sample_index = 0;

  /// "c03_s07"
  std::string id() const;
  friend auto operator<=>(const EventRef&, const EventRef&) = default;
};

struct Placement {
  EventRef event;
  Direction direction;
  double start_s = 0.0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct SceneRecipe {
  std::vector<Placement> placements;  // ordered by start time
  double duration_s = 60.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SceneRecipe&, const SceneRecipe&) = default;
};

/// Source events indexed by (class, sample index).
class EventStore {
 public:
  void add(EventRef ref, EventSample event);
  const EventSample& at(const EventRef& ref) const;
  bool contains(const EventRef& ref) const { return events_.contains(ref); }
  std::size_t samples_for_class(int class_id) const;
  std::size_t size() const { return events_.size(); }

 private:
  std::map<EventRef, EventSample> events_;
};

/// Convolves the mono event with each ear and keeps the first 5 s (the
/// convolution tail is dropped). No level normalization.
dsp::AudioClip spatialize_event(const EventSample& event, const hrtf::Hrir& hrir);

/// Labels implied by a recipe; needs only the events' active regions.
std::vector<EventLabel> recipe_labels(const SceneRecipe& recipe, const EventStore& events);

struct Mixture {
  dsp::AudioClip audio;
  std::vector<EventLabel> labels;
};

/// Stereo mixture of duration_s with every placement's spatialized event
/// added at its start sample. Throws naming any unknown event or direction.
Mixture build_mixture(const SceneRecipe& recipe, const EventStore& events,
                      const hrtf::HrirSet& hrirs);

}  // namespace biseld::scene
