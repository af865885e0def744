#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "biseld/dsp/audio_clip.hpp"
#include "biseld/dsp/fft.hpp"
#include "biseld/error.hpp"
#include "biseld/hrtf/hrir.hpp"
#include "biseld/hrtf/itd.hpp"
#include "biseld/hrtf/spherical_head.hpp"
#include "biseld/scene/dataset.hpp"
#include "biseld/scene/event.hpp"
#include "biseld/scene/labels.hpp"
#include "biseld/scene/mixture.hpp"
#include "biseld/scene/rng.hpp"
#include "test_support.hpp"

namespace biseld::scene {
namespace {

constexpr int kSr = 32000;
constexpr std::size_t kEventSamples = 5 * kSr;

EventSample noise_event(int class_id, std::uint64_t seed) {
  return EventSample(dsp::AudioClip::mono(testing::white_noise(kEventSamples, seed), kSr),
                     class_id, 1.0, 4.0);
}

EventSample silent_event(int class_id) {
  return EventSample(dsp::AudioClip::mono(std::vector<double>(kEventSamples, 0.0), kSr), class_id,
                     1.0, 4.0);
}

hrtf::HrirSet identity_set(const std::vector<Direction>& dirs) {
  hrtf::HrirSet set(kSr);
  for (const auto& d : dirs) set.add(hrtf::Hrir::identity(d, kSr));
  return set;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

double rms(std::span<const double> x, std::size_t begin, std::size_t end) {
  double acc = 0.0;
  for (std::size_t i = begin; i < end; ++i) acc += x[i] * x[i];
  return std::sqrt(acc / static_cast<double>(end - begin));
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(a.index(7), 7u);
    b.index(7);
  }
  EXPECT_NE(derive_seed({1, 2}), derive_seed({2, 1}));
  EXPECT_EQ(derive_seed({1, 2}), derive_seed({1, 2}));
}

TEST(EventSample, PadsAndTrimsToFiveSeconds) {
  const EventSample shorter(dsp::AudioClip::mono(std::vector<double>(1000, 0.5), kSr), 0, 0.0,
                            0.03);
  EXPECT_EQ(shorter.samples().size(), kEventSamples);
  EXPECT_EQ(shorter.samples()[999], 0.5);
  EXPECT_EQ(shorter.samples()[1000], 0.0);
  const EventSample longer(dsp::AudioClip::mono(std::vector<double>(kEventSamples + 7, 0.1), kSr),
                           0, 0.0, 5.0);
  EXPECT_EQ(longer.samples().size(), kEventSamples);
}

TEST(EventSample, RejectsBadActiveRegion) {
  const auto clip = dsp::AudioClip::mono(std::vector<double>(100, 0.0), kSr);
  EXPECT_THROW(EventSample(clip, 0, 2.0, 1.0), Error);
  EXPECT_THROW(EventSample(clip, 0, -0.1, 1.0), Error);
  EXPECT_THROW(EventSample(clip, 0, 1.0, 5.5), Error);
  const auto stereo = dsp::AudioClip::stereo({0.0}, {0.0}, kSr);
  EXPECT_THROW(EventSample(stereo, 0, 0.0, 1.0), Error);
}

TEST(Surrogate, Deterministic) {
  for (auto kind : {SurrogateKind::tone_burst, SurrogateKind::chirp, SurrogateKind::noise_burst,
                    SurrogateKind::am_tone}) {
    const auto a = synth_surrogate_event(kind, 3, 77);
    const auto b = synth_surrogate_event(kind, 3, 77);
    EXPECT_EQ(a.clip(), b.clip()) << to_string(kind);
    EXPECT_EQ(surrogate_kind_from_string(to_string(kind)), kind);
  }
}

TEST(Surrogate, ActiveRegionPeakAndSilence) {
  for (int c = 0; c < 12; ++c) {
    const auto e = synth_surrogate_event(surrogate_kind_for_class(c), c, 1000 + c);
    EXPECT_GE(e.active_onset_s(), 0.5);
    EXPECT_LE(e.active_offset_s(), 4.5);
    double peak = 0.0;
    const auto x = e.samples();
    const auto on = static_cast<std::size_t>(std::llround(e.active_onset_s() * kSr));
    const auto off = static_cast<std::size_t>(std::llround(e.active_offset_s() * kSr));
    for (std::size_t i = 0; i < x.size(); ++i) {
      peak = std::max(peak, std::abs(x[i]));
      if (i < on || i > off) {
        EXPECT_LT(std::abs(x[i]), 1e-4) << "class " << c << " sample " << i;
      }
    }
    EXPECT_NEAR(20.0 * std::log10(peak), kSurrogatePeakDbfs, 1e-9);
  }
}

TEST(Surrogate, ToneBurstPeaksAtCenterFrequency) {
  const auto e = synth_surrogate_event(SurrogateKind::tone_burst, 0, 4);
  const std::size_t n = 1 << 18;
  dsp::RealFft fft(n);
  std::vector<std::complex<double>> spec(fft.num_bins());
  fft.forward(e.samples(), spec);
  std::size_t best = 1;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    if (std::abs(spec[k]) > std::abs(spec[best])) best = k;
  }
  const double hz = static_cast<double>(best) * kSr / n;
  EXPECT_NEAR(hz, surrogate_center_hz(0), 1.0);
  EXPECT_DOUBLE_EQ(surrogate_center_hz(0), 250.0);
}

TEST(Labels, RoundTrip) {
  std::vector<EventLabel> labels;
  for (int c = 0; c < 12; ++c) {
    labels.push_back({c, 5.0 * c + 0.731, 5.0 * c + 3.9, -150.0 + 30.0 * c, 30.0});
  }
  testing::TempDir dir;
  write_labels(labels, dir / "a.csv");
  EXPECT_EQ(read_labels(dir / "a.csv"), labels);
}

TEST(Labels, EmptyListIsHeaderOnly) {
  testing::TempDir dir;
  write_labels({}, dir / "e.csv");
  EXPECT_EQ(slurp(dir / "e.csv"), "class_id,onset_s,offset_s,azimuth_deg,elevation_deg\n");
  EXPECT_TRUE(read_labels(dir / "e.csv").empty());
}

TEST(Labels, SixDecimalFormat) {
  EXPECT_EQ(format_labels({{2, 1.5, 4.25, -90.0, 0.0}}),
            "class_id,onset_s,offset_s,azimuth_deg,elevation_deg\n2,1.500000,4.250000,-90,0\n");
}

TEST(Labels, MalformedRowsReportLine) {
  const std::string header = "class_id,onset_s,offset_s,azimuth_deg,elevation_deg\n";
  try {
    parse_labels(header + "0,1.0,2.0,0,0\n1,3.0,2.5,0,0\n", "x.csv");
    FAIL();
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("x.csv:3"), std::string::npos) << what;
    EXPECT_NE(what.find("offset < onset"), std::string::npos) << what;
  }
  EXPECT_THROW(parse_labels(header + "0,abc,2.0,0,0\n", "y.csv"), Error);
  EXPECT_THROW(parse_labels(header + "0,1.0,2.0,0\n", "y.csv"), Error);
}

TEST(Spatialize, IdentityHrirCopiesEvent) {
  const auto e = noise_event(0, 1);
  const auto out = spatialize_event(e, hrtf::Hrir::identity(Direction{}, kSr));
  ASSERT_EQ(out.num_channels(), 2u);
  EXPECT_TRUE(std::equal(out.channel(0).begin(), out.channel(0).end(), e.samples().begin()));
  EXPECT_TRUE(std::equal(out.channel(1).begin(), out.channel(1).end(), e.samples().begin()));
}

TEST(Spatialize, SilentStaysSilent) {
  const auto out =
      spatialize_event(silent_event(0), hrtf::synth_spherical_hrir(Direction(60.0, 0.0), kSr));
  for (std::size_t c = 0; c < 2; ++c) {
    for (double v : out.channel(c)) EXPECT_EQ(v, 0.0);
  }
}

TEST(Spatialize, LateralHrirCuePreserved) {
  const auto h = hrtf::synth_spherical_hrir(Direction(90.0, 0.0), kSr);
  const auto out = spatialize_event(noise_event(0, 2), h);
  const double got = hrtf::estimate_itd(out.channel(0), out.channel(1), kSr);
  EXPECT_NEAR(got, hrtf::estimate_itd(h), 1.0 / kSr);
}

TEST(Spatialize, RateMismatchThrows) {
  EXPECT_THROW(spatialize_event(noise_event(0, 3), hrtf::Hrir::identity(Direction{}, 16000)),
               Error);
}

class MixtureFixture : public ::testing::Test {
 protected:
  EventStore events;
  SceneRecipe recipe;
  hrtf::HrirSet hrirs = identity_set({Direction(0.0, 0.0), Direction(90.0, 0.0)});

  void SetUp() override {
    for (int c = 0; c < 12; ++c) {
      events.add({c, 0}, noise_event(c, 100 + c));
      recipe.placements.push_back({{c, 0}, Direction(c % 2 ? 90.0 : 0.0, 0.0), 5.0 * (11 - c)});
    }
    std::sort(recipe.placements.begin(), recipe.placements.end(),
              [](const Placement& a, const Placement& b) { return a.start_s < b.start_s; });
  }
};

TEST_F(MixtureFixture, TwelvePlacementsGiveTwelveLabels) {
  const auto mix = build_mixture(recipe, events, hrirs);
  EXPECT_EQ(mix.audio.num_samples(), 60u * kSr);
  ASSERT_EQ(mix.labels.size(), 12u);
  for (const auto& l : mix.labels) {
    EXPECT_LE(l.offset_s, 60.0);
    EXPECT_LT(l.onset_s, l.offset_s);
  }
  EXPECT_EQ(mix.labels, recipe_labels(recipe, events));
  EXPECT_EQ(mix.labels[0].class_id, 11);
  EXPECT_DOUBLE_EQ(mix.labels[0].onset_s, 1.0);
  EXPECT_DOUBLE_EQ(mix.labels[11].offset_s, 59.0);
}

TEST_F(MixtureFixture, SilentEventsStillLabelled) {
  EventStore silent;
  for (int c = 0; c < 12; ++c) silent.add({c, 0}, silent_event(c));
  const auto mix = build_mixture(recipe, silent, hrirs);
  EXPECT_EQ(mix.labels.size(), 12u);
  for (std::size_t c = 0; c < 2; ++c) {
    for (double v : mix.audio.channel(c)) ASSERT_EQ(v, 0.0);
  }
}

TEST_F(MixtureFixture, SpansEqualSpatializedEvents) {
  const auto mix = build_mixture(recipe, events, hrirs);
  for (const auto& p : recipe.placements) {
    const auto alone = spatialize_event(events.at(p.event), hrirs.at(p.direction));
    const auto start = static_cast<std::size_t>(std::llround(p.start_s * kSr));
    for (std::size_t ch = 0; ch < 2; ++ch) {
      for (std::size_t i = 0; i < kEventSamples; i += 101) {
        ASSERT_NEAR(mix.audio.channel(ch)[start + i], alone.channel(ch)[i], 1e-9);
      }
    }
  }
}

TEST_F(MixtureFixture, UnknownDirectionOrEventNamed) {
  auto bad = recipe;
  bad.placements[0].direction = Direction(-30.0, 0.0);
  try {
    build_mixture(bad, events, hrirs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("azimuth -30, elevation 0"), std::string::npos) << e.what();
  }
  bad = recipe;
  bad.placements[0].event = {3, 9};
  try {
    build_mixture(bad, events, hrirs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("c03_s09"), std::string::npos) << e.what();
  }
}

TEST(Mixture, SingleEventMatchesSourceAndSpanIsLoud) {
  EventStore events;
  const auto e = synth_surrogate_event(SurrogateKind::chirp, 1, 9);
  events.add({1, 0}, e);
  SceneRecipe recipe;
  recipe.placements.push_back({{1, 0}, Direction(0.0, 0.0), 0.0});
  const auto mix = build_mixture(recipe, events, identity_set({Direction(0.0, 0.0)}));
  for (std::size_t i = 0; i < kEventSamples; ++i) {
    ASSERT_EQ(mix.audio.channel(0)[i], e.samples()[i]);
  }
  ASSERT_EQ(mix.labels.size(), 1u);
  const auto on = static_cast<std::size_t>(mix.labels[0].onset_s * kSr);
  const auto off = static_cast<std::size_t>(mix.labels[0].offset_s * kSr);
  const double in_span = rms(mix.audio.channel(0), on, off);
  const double outside =
      std::hypot(rms(mix.audio.channel(0), 0, on), rms(mix.audio.channel(0), off, 60 * kSr));
  EXPECT_TRUE(outside == 0.0 || 20.0 * std::log10(in_span / outside) >= 20.0);
}

DatasetSpec small_spec() {
  DatasetSpec spec;
  spec.classes = 1;
  spec.samples_per_class = 20;
  spec.directions = std::vector<Direction>{Direction(90.0, 0.0), Direction(-90.0, 0.0)};
  spec.master_seed = 3;
  return spec;
}

TEST(Dataset, DefaultGridCounts) {
  const auto plans = plan_splits(DatasetSpec{});
  ASSERT_EQ(plans.size(), 5u);
  const std::vector<std::size_t> expected{672, 144, 144, 36, 12};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(plans[i].mixture_count(), expected[i]);
  EXPECT_EQ(plans[0].mixture_id(7), "train_0007");
  EXPECT_EQ(to_string(plans[3].split), "test_h");
}

TEST(Dataset, OneClassTwoDirections) {
  testing::TempDir dir;
  const auto spec = small_spec();
  const auto m = generate_dataset(spec, make_surrogate_store(spec, kSr), hrtf::HrirSet(kSr),
                                  dir.path(), GenerateMode::dry_run);
  ASSERT_FALSE(m.splits.empty());
  EXPECT_EQ(m.splits[0].name, "train");
  EXPECT_EQ(m.splits[0].count, 28u);
  EXPECT_DOUBLE_EQ(m.splits[0].length_s, 28 * 60.0);
  EXPECT_TRUE(std::filesystem::exists(dir / "train/labels/train_0027.csv"));
  EXPECT_FALSE(std::filesystem::exists(dir / "train/wav"));
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
}

TEST(Dataset, SameSeedIsByteIdentical) {
  testing::TempDir a, b;
  const auto spec = small_spec();
  const auto store = make_surrogate_store(spec, kSr);
  const auto ma = generate_dataset(spec, store, hrtf::HrirSet(kSr), a.path(), GenerateMode::dry_run);
  const auto mb = generate_dataset(spec, store, hrtf::HrirSet(kSr), b.path(), GenerateMode::dry_run,
                                   {}, 3);
  EXPECT_EQ(ma.content_hash, mb.content_hash);
  EXPECT_EQ(slurp(a / "manifest.json"), slurp(b / "manifest.json"));
  EXPECT_EQ(slurp(a / "valid/labels/valid_0001.csv"), slurp(b / "valid/labels/valid_0001.csv"));

  auto other = spec;
  other.master_seed = 4;
  testing::TempDir c;
  const auto mc = generate_dataset(other, make_surrogate_store(other, kSr), hrtf::HrirSet(kSr),
                                   c.path(), GenerateMode::dry_run);
  EXPECT_NE(mc.content_hash, ma.content_hash);
}

TEST(Dataset, RecipeDependsOnlyOnIndex) {
  DatasetSpec spec;
  const auto plans = plan_splits(spec);
  const auto alone = make_recipe(spec, plans[1], 17);
  for (std::size_t i = 0; i < 20; ++i) make_recipe(spec, plans[1], i);
  EXPECT_EQ(make_recipe(spec, plans[1], 17), alone);
  EXPECT_NE(make_recipe(spec, plans[1], 18).seed, alone.seed);
}

TEST(Dataset, RecipeTilesSixtySecondsOneEventPerClass) {
  DatasetSpec spec;
  const auto plans = plan_splits(spec);
  for (std::size_t i : {0u, 100u, 671u}) {
    const auto r = make_recipe(spec, plans[0], i);
    ASSERT_EQ(r.placements.size(), 12u);
    std::set<int> classes;
    for (std::size_t k = 0; k < 12; ++k) {
      const auto& p = r.placements[k];
      classes.insert(p.event.class_id);
      EXPECT_DOUBLE_EQ(p.start_s, 5.0 * k);
      EXPECT_EQ(p.direction, plans[0].directions[i % plans[0].directions.size()]);
      EXPECT_EQ(p.event.sample_index, plans[0].sample_indices[i / plans[0].directions.size()]);
    }
    EXPECT_EQ(classes.size(), 12u);
  }
}

TEST(Dataset, IndependentPolicyDrawsFromGrid) {
  DatasetSpec spec;
  spec.direction_policy = DirectionPolicy::independent;
  const auto plans = plan_splits(spec);
  const auto r = make_recipe(spec, plans[3], 5);
  std::set<Direction> seen;
  for (const auto& p : r.placements) {
    EXPECT_EQ(p.direction.elevation_deg(), 0.0);
    seen.insert(p.direction);
  }
  EXPECT_GT(seen.size(), 1u);
}

TEST(Dataset, InvalidSpecsRejected) {
  DatasetSpec spec;
  spec.split.train = 13;
  EXPECT_THROW(spec.validate(), Error);
  spec = {};
  spec.mixture_duration_s = 30.0;
  EXPECT_THROW(spec.validate(), Error);
}

TEST(Dataset, InsufficientEventsRejected) {
  testing::TempDir dir;
  const auto spec = small_spec();
  EventStore few;
  few.add({0, 0}, silent_event(0));
  EXPECT_THROW(generate_dataset(spec, few, hrtf::HrirSet(kSr), dir.path(), GenerateMode::dry_run),
               Error);
}

TEST(Dataset, SpecJsonRoundTrip) {
  auto spec = small_spec();
  spec.direction_policy = DirectionPolicy::independent;
  const nlohmann::json j = spec;
  const auto back = j.get<DatasetSpec>();
  EXPECT_EQ(back.classes, 1);
  EXPECT_EQ(back.master_seed, 3u);
  EXPECT_EQ(back.direction_policy, DirectionPolicy::independent);
  ASSERT_TRUE(back.directions);
  EXPECT_EQ(back.directions->size(), 2u);
  EXPECT_EQ(nlohmann::json::object().get<DatasetSpec>().grid().size(), 48u);
}

}  // namespace
}  // namespace biseld::scene
