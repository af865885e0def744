#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "biseld/btff/btff.hpp"
#include "biseld/dsp/audio_clip.hpp"
#include "biseld/dsp/biquad.hpp"
#include "biseld/dsp/convolve.hpp"
#include "biseld/dsp/stft.hpp"
#include "biseld/error.hpp"
#include "biseld/hrtf/spherical_head.hpp"
#include "biseld/scene/rng.hpp"
#include "test_support.hpp"

namespace biseld::btff {
namespace {

constexpr int kSr = 32000;
constexpr double kFloorDb = -100.0;

std::vector<double> tone(double hz, std::size_t n, double delay_s = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 0.3 * std::sin(2.0 * std::numbers::pi * hz * (static_cast<double>(i) / kSr - delay_s));
  }
  return x;
}

std::size_t row_argmax(const Matrix& m, std::size_t r) {
  const auto row = m.row(r);
  return static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
}

// Cosines on every 4th bin above 5 kHz, periodic in n_fft: every STFT bin
// is fed by one component, so a delay only rotates phases.
std::pair<std::vector<double>, std::vector<double>> sparse_multisine(const FeatureConfig& cfg,
                                                                     double delay_s) {
  scene::Rng rng(21);
  const double d = delay_s * cfg.sample_rate;
  std::vector<double> l(16000, 0.0), r(16000, 0.0);
  for (std::size_t j = cfg.high_min_bin() + 4; j + 1 < cfg.num_bins(); j += 4) {
    const double amp = 0.01 + 0.05 * rng.uniform();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    const double w = 2.0 * std::numbers::pi * static_cast<double>(j) / cfg.n_fft;
    for (std::size_t n = 0; n < l.size(); ++n) {
      const double base = w / static_cast<double>(j) * static_cast<double>((j * n) % cfg.n_fft);
      l[n] += amp * std::cos(base + phase);
      r[n] += amp * std::cos(base + w * d + phase);
    }
  }
  return {l, r};
}

class BtffFixture : public ::testing::Test {
 protected:
  FeatureConfig cfg;
  Filterbanks fb = Filterbanks::make(cfg);
};

TEST_F(BtffFixture, ChannelNames) {
  EXPECT_EQ(channel_names().size(), kNumChannels);
  EXPECT_EQ(channel_from_name("ITD"), Channel::itd);
  EXPECT_EQ(channel_from_name("SC_R"), Channel::sc_right);
  EXPECT_FALSE(channel_from_name("XYZ"));
}

TEST_F(BtffFixture, MelSpectrogramOfSilenceIsFloor) {
  const auto ms = mel_spectrogram(dsp::stft(std::vector<double>(4096, 0.0), cfg), fb.spectral, cfg);
  for (double v : ms.values()) EXPECT_NEAR(v, kFloorDb, 1e-9);
}

TEST_F(BtffFixture, MelSpectrogramToneArgmax) {
  const auto ms = mel_spectrogram(dsp::stft(tone(1000.0, 16000), cfg), fb.spectral, cfg);
  for (std::size_t m = 0; m < ms.rows(); ++m) {
    EXPECT_GT(fb.spectral.weights()(row_argmax(ms, m), 32), 0.0);
  }
}

TEST_F(BtffFixture, VelocityOfConstantSpectrogramIsZero) {
  dsp::ComplexSpectrogram spec(6, cfg.n_fft, cfg.hop, kSr);
  for (std::size_t m = 0; m < 6; ++m) {
    for (std::size_t k = 0; k < spec.bins(); ++k) spec(m, k) = {0.5, -0.25};
  }
  const auto v = velocity_map(spec, fb.averaging);
  for (double x : v.values()) EXPECT_EQ(x, 0.0);
}

TEST_F(BtffFixture, VelocityOfRampIsOne) {
  dsp::ComplexSpectrogram spec(7, cfg.n_fft, cfg.hop, kSr);
  for (std::size_t m = 0; m < 7; ++m) {
    for (std::size_t k = 0; k < spec.bins(); ++k) spec(m, k) = static_cast<double>(m);
  }
  const auto v = velocity_map(spec, fb.averaging);
  for (std::size_t m = 0; m < v.rows(); ++m) {
    for (std::size_t b = 0; b < v.cols(); ++b) {
      if (fb.averaging.support(b)) {
        EXPECT_NEAR(v(m, b), 1.0, 1e-12);
      }
    }
  }
}

TEST_F(BtffFixture, VelocityNeedsTwoFrames) {
  const dsp::ComplexSpectrogram spec(1, cfg.n_fft, cfg.hop, kSr);
  try {
    velocity_map(spec, fb.averaging);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("too few frames"), std::string::npos);
  }
}

TEST_F(BtffFixture, VelocityMatchesBruteForce) {
  scene::Rng rng(3);
  dsp::ComplexSpectrogram spec(5, cfg.n_fft, cfg.hop, kSr);
  for (std::size_t m = 0; m < 5; ++m) {
    for (std::size_t k = 0; k < spec.bins(); ++k) spec(m, k) = {rng.normal(), rng.normal()};
  }
  const auto v = velocity(spec.magnitude());
  auto s = [&](std::size_t m, std::size_t k) { return std::abs(spec(m, k)); };
  for (std::size_t k = 0; k < spec.bins(); k += 37) {
    EXPECT_DOUBLE_EQ(v(0, k), s(1, k) - s(0, k));
    EXPECT_DOUBLE_EQ(v(2, k), (s(3, k) - s(1, k)) / 2.0);
    EXPECT_DOUBLE_EQ(v(4, k), s(4, k) - s(3, k));
  }
}

TEST_F(BtffFixture, IdenticalChannelsGiveZeroCues) {
  const auto x = testing::white_noise(16000, 4);
  const auto spec = dsp::stft(x, cfg);
  const auto itd = itd_map(spec, spec, fb.averaging, cfg);
  const auto ild = ild_map(spec, spec, fb.averaging, cfg);
  for (double v : itd.values()) EXPECT_EQ(v, 0.0);
  for (double v : ild.values()) EXPECT_EQ(v, 0.0);
}

TEST_F(BtffFixture, DelayedToneGivesNegativePhaseDelay) {
  const auto l = dsp::stft(tone(500.0, 16000), cfg);
  const auto r = dsp::stft(tone(500.0, 16000, 400e-6), cfg);
  const auto pd = phase_delay(l, r, cfg);
  for (std::size_t m = 0; m < pd.rows(); ++m) {
    EXPECT_NEAR(pd(m, 16), -400e-6, 1e-9);
  }
}

TEST_F(BtffFixture, BroadbandAdvanceInLowBands) {
  const auto left = testing::white_noise(std::size_t{1} << 21, 11);
  const auto right = testing::circular_advance(left, 200e-6, kSr);
  const auto map = itd_map(dsp::stft(left, cfg), dsp::stft(right, cfg), fb.averaging, cfg);
  std::size_t checked = 0;
  for (std::size_t b = 0; b < map.cols(); ++b) {
    const auto& sup = fb.averaging.support(b);
    if (!sup || sup->first < 1 || sup->last > cfg.itd_max_bin()) continue;
    double mean = 0.0;
    for (std::size_t m = 0; m < map.rows(); ++m) mean += map(m, b);
    mean /= static_cast<double>(map.rows());
    EXPECT_NEAR(mean, 200e-6, 5e-6) << "band " << b;
    ++checked;
  }
  EXPECT_GT(checked, 10u);
}

TEST_F(BtffFixture, PhaseDelayStaysOnPrincipalBranch) {
  const auto l = dsp::stft(testing::white_noise(8000, 5), cfg);
  const auto r = dsp::stft(testing::white_noise(8000, 6), cfg);
  const auto pd = phase_delay(l, r, cfg);
  for (std::size_t m = 0; m < pd.rows(); ++m) {
    EXPECT_EQ(pd(m, 0), 0.0);
    for (std::size_t k = 1; k < pd.cols(); ++k) {
      if (k > cfg.itd_max_bin()) {
        EXPECT_EQ(pd(m, k), 0.0);
      } else {
        EXPECT_LE(std::abs(pd(m, k)), 1.0 / (2.0 * cfg.bin_frequency(k)) + 1e-15);
      }
    }
  }
}

TEST_F(BtffFixture, ItdBandsAboveLimitAreZero) {
  const auto l = dsp::stft(testing::white_noise(8000, 7), cfg);
  const auto r = dsp::stft(testing::white_noise(8000, 8), cfg);
  const auto map = itd_map(l, r, fb.averaging, cfg);
  for (std::size_t b = 0; b < map.cols(); ++b) {
    if (band_touches(fb.averaging, b, 1, cfg.itd_max_bin())) continue;
    for (std::size_t m = 0; m < map.rows(); ++m) EXPECT_EQ(map(m, b), 0.0);
  }
}

TEST_F(BtffFixture, IldOfTenfoldGain) {
  const auto x = testing::white_noise(16000, 9);
  auto y = x;
  for (auto& v : y) v *= 10.0;
  const auto map = ild_map(dsp::stft(x, cfg), dsp::stft(y, cfg), fb.averaging, cfg);
  for (std::size_t b = 0; b < map.cols(); ++b) {
    const auto& sup = fb.averaging.support(b);
    const bool full = sup && sup->first > cfg.high_min_bin();
    const bool none = !band_touches(fb.averaging, b, cfg.high_min_bin() + 1, 512);
    for (std::size_t m = 0; m < map.rows(); ++m) {
      if (full) {
        EXPECT_NEAR(map(m, b), 20.0, 1e-9);
      } else if (none) {
        EXPECT_EQ(map(m, b), 0.0);
      }
    }
  }
}

TEST_F(BtffFixture, IldOfPureDelayIsZero) {
  const auto [l, r] = sparse_multisine(cfg, 250e-6);
  const auto map = ild_map(dsp::stft(l, cfg), dsp::stft(r, cfg), fb.averaging, cfg);
  for (double v : map.values()) EXPECT_NEAR(v, 0.0, 1e-6);
}

TEST_F(BtffFixture, IldIsClamped) {
  const auto x = testing::white_noise(8000, 10);
  auto y = x;
  for (auto& v : y) v *= 1e4;
  const auto diff = level_difference(dsp::stft(x, cfg), dsp::stft(y, cfg), cfg);
  for (std::size_t k = cfg.high_min_bin() + 1; k < diff.cols(); ++k) {
    EXPECT_EQ(diff(0, k), kIldClampDb);
  }
}

TEST_F(BtffFixture, ScOfLowToneIsFloor) {
  const auto sc = sc_map(dsp::stft(tone(1000.0, 8000), cfg), fb.spectral, cfg);
  for (double v : sc.values()) EXPECT_NEAR(v, kFloorDb, 1e-9);
}

TEST_F(BtffFixture, ScOfHighTone) {
  const auto sc = sc_map(dsp::stft(tone(8000.0, 8000), cfg), fb.spectral, cfg);
  for (std::size_t m = 0; m < sc.rows(); ++m) {
    EXPECT_GT(fb.spectral.weights()(row_argmax(sc, m), 256), 0.0);
    for (std::size_t b = 0; b < sc.cols(); ++b) {
      if (!band_touches(fb.spectral, b, cfg.high_min_bin() + 1, 512)) {
        EXPECT_NEAR(sc(m, b), kFloorDb, 1e-9);
      }
    }
  }
}

TEST_F(BtffFixture, ScShowsNotchAsLocalMinimum) {
  const auto notch = dsp::Biquad::notch(9000.0, 1.5, kSr);
  const auto x = notch.apply(testing::white_noise(32000, 12));
  const auto sc = sc_map(dsp::stft(x, cfg), fb.spectral, cfg);
  const auto& centers = fb.spectral.centers_hz();
  std::size_t nearest = 0;
  for (std::size_t b = 1; b < centers.size(); ++b) {
    if (std::abs(centers[b] - 9000.0) < std::abs(centers[nearest] - 9000.0)) nearest = b;
  }
  for (std::size_t m = 0; m < sc.rows(); ++m) {
    EXPECT_LT(sc(m, nearest), sc(m, nearest - 1)) << "frame " << m;
    EXPECT_LT(sc(m, nearest), sc(m, nearest + 1)) << "frame " << m;
  }
}

TEST_F(BtffFixture, ExtractRejectsMono) {
  const auto clip = dsp::AudioClip::mono(testing::white_noise(4096, 1), kSr);
  try {
    extract_btff(clip, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("binaural input required"), std::string::npos);
  }
}

TEST_F(BtffFixture, ExtractIdenticalChannels) {
  const auto x = testing::white_noise(16000, 13);
  const auto t = extract_btff(dsp::AudioClip::stereo(x, x, kSr), cfg);
  EXPECT_EQ(t.frames(), cfg.num_frames(16000));
  EXPECT_EQ(t.bands(), 64u);
  EXPECT_EQ(t.channel(Channel::ms_left), t.channel(Channel::ms_right));
  EXPECT_EQ(t.channel(Channel::sc_left), t.channel(Channel::sc_right));
  for (double v : t.channel(Channel::itd).values()) EXPECT_EQ(v, 0.0);
  for (double v : t.channel(Channel::ild).values()) EXPECT_EQ(v, 0.0);
  EXPECT_DOUBLE_EQ(t.frame_times_s()[1], 0.01);
}

TEST_F(BtffFixture, ExtractEqualsComposedSubFeatures) {
  const auto l = testing::white_noise(12000, 14);
  const auto r = testing::white_noise(12000, 15);
  const auto t = extract_btff(dsp::AudioClip::stereo(l, r, kSr), cfg);
  const auto sl = dsp::stft(l, cfg), sr = dsp::stft(r, cfg);
  EXPECT_EQ(t.channel(Channel::ms_left), mel_spectrogram(sl, fb.spectral, cfg));
  EXPECT_EQ(t.channel(Channel::ms_right), mel_spectrogram(sr, fb.spectral, cfg));
  EXPECT_EQ(t.channel(Channel::v_left), velocity_map(sl, fb.averaging));
  EXPECT_EQ(t.channel(Channel::v_right), velocity_map(sr, fb.averaging));
  EXPECT_EQ(t.channel(Channel::itd), itd_map(sl, sr, fb.averaging, cfg));
  EXPECT_EQ(t.channel(Channel::ild), ild_map(sl, sr, fb.averaging, cfg));
  EXPECT_EQ(t.channel(Channel::sc_left), sc_map(sl, fb.spectral, cfg));
  EXPECT_EQ(t.channel(Channel::sc_right), sc_map(sr, fb.spectral, cfg));
  const auto flat = t.flatten();
  ASSERT_EQ(flat.size(), 8 * t.frames() * 64);
  EXPECT_EQ(flat[4 * t.frames() * 64 + 64 + 3], t.channel(Channel::itd)(1, 3));
}

TEST_F(BtffFixture, ExtractRejectsWrongRate) {
  const auto x = testing::white_noise(8000, 16);
  EXPECT_THROW(extract_btff(dsp::AudioClip::stereo(x, x, 16000), cfg), Error);
}

TEST_F(BtffFixture, LateralSourcesSignItdAndIld) {
  const auto noise = testing::white_noise(32000, 17);
  for (double az : {90.0, -90.0}) {
    const auto h = hrtf::synth_spherical_hrir(Direction(az, 0.0), kSr);
    auto l = dsp::convolve(noise, h.left());
    auto r = dsp::convolve(noise, h.right());
    l.resize(noise.size());
    r.resize(noise.size());
    const auto t = extract_btff(dsp::AudioClip::stereo(l, r, kSr), cfg);
    double itd = 0.0, ild = 0.0;
    for (double v : t.channel(Channel::itd).values()) itd += v;
    for (double v : t.channel(Channel::ild).values()) ild += v;
    if (az > 0) {
      EXPECT_GT(itd, 0.0);
      EXPECT_GT(ild, 0.0);
    } else {
      EXPECT_LT(itd, 0.0);
      EXPECT_LT(ild, 0.0);
    }
  }
}

}  // namespace
}  // namespace biseld::btff
