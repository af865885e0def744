#pragma once

#include <span>

#include "biseld/hrtf/hrir.hpp"

namespace biseld::hrtf {

/// Interaural time difference in seconds: the lag maximizing the normalized
/// cross-correlation sum_t left[t] * right[t - lag] over integer lags
/// |lag| <= max_lag_us, refined by a parabola through the peak and its
/// neighbours. Positive means the right ear leads.
///
/// Throws biseld::Error("degenerate HRIR ...") if either input is all zero.
double estimate_itd(std::span<const double> left, std::span<const double> right,
                    int sample_rate, double max_lag_us = 1000.0);

double estimate_itd(const Hrir& hrir, double max_lag_us = 1000.0);

}  // namespace biseld::hrtf
