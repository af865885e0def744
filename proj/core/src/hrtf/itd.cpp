#include "biseld/hrtf/itd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <fmt/format.h>

#include "biseld/error.hpp"

namespace biseld::hrtf {

namespace {

double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

// sum_t left[t] * right[t - lag]
double lagged_product(std::span<const double> left, std::span<const double> right,
                      std::int64_t lag) {
  const auto n_left = static_cast<std::int64_t>(left.size());
  const auto n_right = static_cast<std::int64_t>(right.size());
  const std::int64_t t0 = std::max<std::int64_t>(0, lag);
  const std::int64_t t1 = std::min(n_left, n_right + lag);
  double acc = 0.0;
  for (std::int64_t t = t0; t < t1; ++t) acc += left[t] * right[t - lag];
  return acc;
}

}  // namespace

double estimate_itd(std::span<const double> left, std::span<const double> right,
                    int sample_rate, double max_lag_us) {
  if (sample_rate <= 0) throw Error("ITD: sample rate must be positive");
  const double max_lag_samples = max_lag_us * sample_rate / 1e6;
  if (!(max_lag_samples >= 1.0)) {
    throw Error(fmt::format("ITD: max lag {} us is shorter than one sample", max_lag_us));
  }
  const double e_left = energy(left);
  const double e_right = energy(right);
  if (e_left == 0.0 || e_right == 0.0) {
    throw Error("degenerate HRIR: an ear has zero energy, correlation undefined");
  }
  const double norm = std::sqrt(e_left * e_right);
  const auto max_lag = static_cast<std::int64_t>(std::floor(max_lag_samples + 1e-9));

  std::vector<double> corr(static_cast<std::size_t>(2 * max_lag + 1));
  for (std::int64_t lag = -max_lag; lag <= max_lag; ++lag) {
    corr[static_cast<std::size_t>(lag + max_lag)] = lagged_product(left, right, lag) / norm;
  }

  // Ties resolve towards the smaller |lag|.
  std::int64_t best = 0;
  double best_value = corr[static_cast<std::size_t>(max_lag)];
  for (std::int64_t lag = -max_lag; lag <= max_lag; ++lag) {
    const double v = corr[static_cast<std::size_t>(lag + max_lag)];
    if (v > best_value || (v == best_value && std::llabs(lag) < std::llabs(best))) {
      best = lag;
      best_value = v;
    }
  }

  double offset = 0.0;
  if (best > -max_lag && best < max_lag) {
    const double y0 = corr[static_cast<std::size_t>(best - 1 + max_lag)];
    const double y1 = best_value;
    const double y2 = corr[static_cast<std::size_t>(best + 1 + max_lag)];
    const double curvature = y0 - 2.0 * y1 + y2;
    if (curvature < 0.0) offset = std::clamp(0.5 * (y0 - y2) / curvature, -0.5, 0.5);
  }
  const double itd = (static_cast<double>(best) + offset) / sample_rate;
  const double limit = max_lag_us * 1e-6;
  return std::clamp(itd, -limit, limit);
}

double estimate_itd(const Hrir& hrir, double max_lag_us) {
  return estimate_itd(hrir.left(), hrir.right(), hrir.sample_rate(), max_lag_us);
}

}  // namespace biseld::hrtf
