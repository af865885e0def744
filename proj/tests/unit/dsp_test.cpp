#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <vector>

#include "biseld/dsp/audio_clip.hpp"
#include "biseld/dsp/convolve.hpp"
#include "biseld/dsp/feature_config.hpp"
#include "biseld/dsp/fft.hpp"
#include "biseld/dsp/matrix_io.hpp"
#include "biseld/dsp/mel.hpp"
#include "biseld/dsp/resample.hpp"
#include "biseld/dsp/stft.hpp"
#include "biseld/dsp/wav_io.hpp"
#include "biseld/error.hpp"
#include "biseld/scene/rng.hpp"
#include "test_support.hpp"

namespace biseld::dsp {
namespace {

std::vector<double> sine(double hz, std::size_t n, int sr, double amp = 0.5) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amp * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / sr);
  }
  return x;
}

std::size_t argmax(std::span<const std::complex<double>> row) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (std::abs(row[k]) > std::abs(row[best])) best = k;
  }
  return best;
}

TEST(FeatureConfig, DefaultsGiveExactCueBins) {
  FeatureConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.num_bins(), 513u);
  EXPECT_DOUBLE_EQ(cfg.bin_hz(), 31.25);
  EXPECT_EQ(cfg.itd_max_bin(), 48u);
  EXPECT_EQ(cfg.high_min_bin(), 160u);
  EXPECT_EQ(cfg.num_frames(1'920'000), 5997u);
  EXPECT_EQ(cfg.num_frames(1000), 0u);
}

TEST(FeatureConfig, RejectsBadValues) {
  FeatureConfig cfg;
  cfg.hop = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.n_fft = 1000;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.sample_rate = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(FeatureConfig, JsonRoundTripAndPartialKeys) {
  FeatureConfig cfg;
  cfg.n_mels = 40;
  cfg.window = WindowKind::hamming;
  nlohmann::json j = cfg;
  EXPECT_EQ(j.get<FeatureConfig>(), cfg);

  const auto partial = nlohmann::json{{"hop", 160}}.get<FeatureConfig>();
  EXPECT_EQ(partial.hop, 160u);
  EXPECT_EQ(partial.n_fft, 1024u);
}

TEST(Fft, InverseOfForwardScalesByN) {
  const auto x = testing::white_noise(256, 3);
  RealFft fft(256);
  std::vector<std::complex<double>> spec(fft.num_bins());
  std::vector<double> y(256);
  fft.forward(x, spec);
  fft.inverse(spec, y);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i] / 256.0, x[i], 1e-14);
}

TEST(Fft, MatchesDirectDft) {
  const auto x = testing::white_noise(64, 4);
  RealFft fft(64);
  std::vector<std::complex<double>> spec(fft.num_bins());
  fft.forward(x, spec);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    std::complex<double> acc{};
    for (std::size_t n = 0; n < x.size(); ++n) {
      acc += x[n] * std::polar(1.0, -2.0 * std::numbers::pi * k * n / 64.0);
    }
    EXPECT_NEAR(std::abs(acc - spec[k]), 0.0, 1e-12) << "bin " << k;
  }
}

TEST(Fft, Pow2Helpers) {
  EXPECT_EQ(next_pow2(1), 1u);
  EXPECT_EQ(next_pow2(1025), 2048u);
  EXPECT_TRUE(is_pow2(1024));
  EXPECT_FALSE(is_pow2(1000));
}

TEST(Stft, FrameCountForOneSecond) {
  const auto spec = stft(std::vector<double>(32000, 0.0), FeatureConfig{});
  EXPECT_EQ(spec.frames(), 97u);
  EXPECT_EQ(spec.bins(), 513u);
}

TEST(Stft, ZeroInputGivesZeroSpectrogram) {
  const auto spec = stft(std::vector<double>(4096, 0.0), FeatureConfig{});
  for (std::size_t m = 0; m < spec.frames(); ++m) {
    for (const auto& c : spec.frame(m)) EXPECT_EQ(c, std::complex<double>{});
  }
}

TEST(Stft, ToneLandsOnItsBin) {
  const auto spec = stft(sine(1000.0, 32000, 32000), FeatureConfig{});
  for (std::size_t m = 0; m < spec.frames(); ++m) EXPECT_EQ(argmax(spec.frame(m)), 32u);
}

TEST(Stft, ShortInputThrows) {
  try {
    stft(std::vector<double>(100, 0.0), FeatureConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("insufficient samples"), std::string::npos);
  }
}

TEST(Stft, FrameMatchesWindowedDft) {
  FeatureConfig cfg;
  cfg.n_fft = 64;
  cfg.hop = 16;
  cfg.n_mels = 8;
  const auto x = testing::white_noise(200, 8);
  const auto spec = stft(x, cfg);
  const auto w = make_window(WindowKind::hann, 64);
  const std::size_t m = 3;
  for (std::size_t k = 0; k < spec.bins(); ++k) {
    std::complex<double> acc{};
    for (std::size_t n = 0; n < 64; ++n) {
      acc += w[n] * x[m * 16 + n] * std::polar(1.0, -2.0 * std::numbers::pi * k * n / 64.0);
    }
    EXPECT_NEAR(std::abs(acc - spec(m, k)), 0.0, 1e-12);
  }
}

TEST(Window, PeriodicHann) {
  const auto w = make_window(WindowKind::hann, 8);
  EXPECT_DOUBLE_EQ(w[0], 0.0);
  EXPECT_DOUBLE_EQ(w[4], 1.0);
  EXPECT_NEAR(w[2], 0.5, 1e-15);
  EXPECT_NEAR(w[6], 0.5, 1e-15);
}

TEST(Mel, HtkScaleRoundTrip) {
  EXPECT_NEAR(hz_to_mel(700.0), 2595.0 * std::log10(2.0), 1e-9);
  for (double hz : {0.0, 100.0, 1000.0, 8000.0, 16000.0}) {
    EXPECT_NEAR(mel_to_hz(hz_to_mel(hz)), hz, 1e-9);
  }
}

TEST(Mel, ShapeAndAveragingRowSums) {
  FeatureConfig cfg;
  const auto fb = make_mel_filterbank(cfg, MelNormalization::averaging, 0.0, 16000.0);
  EXPECT_EQ(fb.bands(), 64u);
  EXPECT_EQ(fb.bins(), 513u);
  for (std::size_t b = 0; b < fb.bands(); ++b) {
    if (!fb.support(b)) continue;
    double sum = 0.0;
    for (double w : fb.weights().row(b)) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-12) << "band " << b;
  }
}

TEST(Mel, InvalidRangeThrows) {
  EXPECT_THROW(make_mel_filterbank(FeatureConfig{}, MelNormalization::spectral, 8000.0, 8000.0),
               Error);
}

TEST(Mel, ProjectOnesThroughAveragingBank) {
  FeatureConfig cfg;
  const auto fb = make_mel_filterbank(cfg, MelNormalization::averaging, 0.0, 16000.0);
  const auto out = project_mel(Matrix(2, 513, 1.0), fb);
  for (std::size_t b = 0; b < fb.bands(); ++b) {
    if (fb.support(b)) {
      EXPECT_NEAR(out(0, b), 1.0, 1e-12);
    }
  }
}

TEST(Mel, SingleBinOnlyReachesItsBands) {
  FeatureConfig cfg;
  const auto fb = make_mel_filterbank(cfg, MelNormalization::spectral, 0.0, 16000.0);
  Matrix in(1, 513);
  in(0, 100) = 1.0;
  const auto out = project_mel(in, fb);
  for (std::size_t b = 0; b < fb.bands(); ++b) {
    EXPECT_EQ(out(0, b) != 0.0, fb.weights()(b, 100) != 0.0);
  }
}

TEST(Mel, ProjectionMatchesDoubleLoop) {
  FeatureConfig cfg;
  const auto fb = make_mel_filterbank(cfg, MelNormalization::spectral, 0.0, 16000.0);
  scene::Rng rng(12);
  Matrix in(3, 513);
  for (auto& v : in.values()) v = rng.normal();
  const auto out = project_mel(in, fb);
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t b = 0; b < fb.bands(); ++b) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 513; ++k) acc += fb.weights()(b, k) * in(m, k);
      EXPECT_NEAR(out(m, b), acc, 1e-12);
    }
  }
}

TEST(Mel, DimensionMismatchThrows) {
  const auto fb = make_mel_filterbank(FeatureConfig{}, MelNormalization::spectral, 0.0, 16000.0);
  EXPECT_THROW(project_mel(Matrix(1, 100), fb), Error);
}

TEST(Resample, LengthFormula) {
  const auto y = resample(std::vector<double>(44100, 0.0), 44100, 32000);
  EXPECT_EQ(y.size(), 32000u);
}

TEST(Resample, EqualRatesAreBitIdentical) {
  const auto clip = AudioClip::mono(testing::white_noise(1000, 1), 32000);
  EXPECT_EQ(resample(clip, 32000), clip);
}

TEST(Resample, NonPositiveTargetThrows) {
  const auto clip = AudioClip::mono(testing::white_noise(1000, 1), 32000);
  EXPECT_THROW(resample(clip, 0), Error);
}

TEST(Resample, TonePreservesFrequency) {
  const auto y = resample(sine(500.0, 44100, 44100), 44100, 32000);
  const auto spec = stft(y, FeatureConfig{});
  for (std::size_t m = 0; m < spec.frames(); ++m) EXPECT_EQ(argmax(spec.frame(m)), 16u);
}

TEST(Convolve, SmallCases) {
  const std::vector<double> one{1.0, 1.0};
  EXPECT_EQ(convolve(one, one), (std::vector<double>{1.0, 2.0, 1.0}));
  const auto x = testing::white_noise(50, 2);
  const std::vector<double> delta{1.0};
  EXPECT_EQ(convolve(x, delta), x);
}

TEST(Convolve, FftRouteMatchesDirect) {
  const auto x = testing::white_noise(1000, 5);
  const auto h = testing::white_noise(257, 6);
  const auto direct = convolve_direct(x, h);
  const auto fast = convolve_fft(x, h);
  const auto dispatched = convolve(x, h);
  ASSERT_EQ(direct.size(), 1256u);
  ASSERT_EQ(fast.size(), direct.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    EXPECT_NEAR(fast[i], direct[i], 1e-12);
    EXPECT_NEAR(dispatched[i], direct[i], 1e-12);
  }
}

TEST(AudioClip, RejectsRaggedOrNonFinite) {
  EXPECT_THROW(AudioClip::stereo({0.0, 1.0}, {0.0}, 32000), Error);
  EXPECT_THROW(AudioClip::mono({0.0, std::nan("")}, 32000), Error);
}

TEST(WavIo, RoundTripWithin16BitQuantization) {
  testing::TempDir dir;
  const auto left = testing::white_noise(500, 7, 0.2);
  const auto right = testing::white_noise(500, 8, 0.2);
  const auto clip = AudioClip::stereo(left, right, 32000);
  write_wav(dir / "x.wav", clip);
  const auto back = read_wav(dir / "x.wav");
  ASSERT_EQ(back.num_channels(), 2u);
  ASSERT_EQ(back.num_samples(), 500u);
  EXPECT_EQ(back.sample_rate(), 32000);
  for (std::size_t i = 0; i < 500; ++i) {
    EXPECT_NEAR(back.channel(0)[i], left[i], 1.0 / 32768.0);
    EXPECT_NEAR(back.channel(1)[i], right[i], 1.0 / 32768.0);
  }
}

TEST(WavIo, MissingOrGarbageFileIsIoError) {
  testing::TempDir dir;
  EXPECT_THROW(read_wav(dir / "nope.wav"), IoError);
  {
    std::ofstream f(dir / "bad.wav", std::ios::binary);
    f << "not a wave file at all";
  }
  EXPECT_THROW(read_wav(dir / "bad.wav"), IoError);
}

TEST(MatrixIo, TensorRoundTrip) {
  testing::TempDir dir;
  const std::vector<double> values{0.0, 1.5, -2.25, 3.0, 4.0, 5.0};
  write_f32_tensor(dir / "t.f32", values, {2, 3}, {"A", "B"}, {{"note", "x"}});
  const auto t = read_f32_tensor(dir / "t.f32");
  EXPECT_EQ(t.shape, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(t.channels, (std::vector<std::string>{"A", "B"}));
  ASSERT_EQ(t.values.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_FLOAT_EQ(t.values[i], static_cast<float>(values[i]));
  EXPECT_EQ(t.sidecar.at("note"), "x");
  EXPECT_EQ(t.sidecar.at("dtype"), "f32le");
}

}  // namespace
}  // namespace biseld::dsp
