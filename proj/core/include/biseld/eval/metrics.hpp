#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biseld/eval/doa.hpp"
#include "biseld/scene/labels.hpp"

namespace biseld::eval {

enum class Granularity { segment, frame };
std::string to_string(Granularity g);
Granularity granularity_from_string(const std::string& name);

struct EvalOptions {
  double segment_s = 1.0;
  double angle_threshold_deg = 20.0;
  /// Granularity of the LE_CD / LR_CD pairing; ER20 / F20 are always
  /// segment-based.
  Granularity granularity = Granularity::segment;
};

struct ClassCounts {
  long long tp = 0, fp = 0, fn = 0;
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// Summed segment-level detection counts.
struct DetectionCounts {
  long long tp = 0, fp = 0, fn = 0;
  long long substitutions = 0, deletions = 0, insertions = 0;
  long long reference = 0;  // N: active reference (segment, class) pairs
  std::vector<ClassCounts> per_class;

  /// (S + D + I) / N; empty when N = 0.
  std::optional<double> error_rate() const;
  /// 2 TP / (2 TP + FP + FN); 1 when all three are zero.
  double f_score() const;
  void merge(const DetectionCounts& other);
  friend bool operator==(const DetectionCounts&, const DetectionCounts&) = default;
};

/// Sums behind LE_CD and LR_CD.
struct LocalizationCounts {
  long long pairs = 0;            // ref and pred both active
  long long reference_pairs = 0;  // ref active
  long long predicted_pairs = 0;  // pred active
  double angle_sum_deg = 0.0;

  /// Mean angular error over matched pairs; 180 when predictions and
  /// references exist but never coincide, 0 when there is nothing at all.
  double le_cd_deg() const;
  /// pairs / reference_pairs; 1 when there are no reference pairs.
  double lr_cd() const;
  void merge(const LocalizationCounts& other);
};

/// Class activity OR-ed over each segment, then S/D/I per segment.
/// Throws biseld::Error on frame count, class count or hop mismatch.
DetectionCounts segment_sed_metrics(const FrameDetection& ref, const FrameDetection& pred,
                                    double segment_s = 1.0);

struct LocationAwareCounts {
  DetectionCounts gated;  // TP requires angular error < threshold
  LocalizationCounts localization;
};

LocationAwareCounts location_aware_metrics(const FrameDetection& ref, const FrameDetection& pred,
                                           const EvalOptions& options = {});

struct SeldErrors {
  double sed_error = 0.0;
  double doa_error = 0.0;
  double seld_error = 0.0;
};

/// sed = (ER + 1 - F) / 2, doa = (LE / 180 + 1 - LR) / 2, seld = mean.
SeldErrors seld_error(double er20, double f20, double le_cd_deg, double lr_cd);

struct MetricsReport {
  std::optional<double> er;   // plain segment ER
  double f = 1.0;             // plain segment F
  std::optional<double> er20;
  double f20 = 1.0;
  double le_cd_deg = 0.0;
  double lr_cd = 1.0;
  double sed_error = 0.0;
  double doa_error = 0.0;
  double seld_error = 0.0;
  DetectionCounts sed_counts;
  DetectionCounts gated_counts;
  LocalizationCounts localization;

  /// When ER20 is undefined (no reference events) the insertion count
  /// stands in for it in the composite errors.
  static MetricsReport from_counts(const DetectionCounts& sed, const LocationAwareCounts& loc);
  nlohmann::ordered_json to_json() const;
};

MetricsReport evaluate(const FrameDetection& ref, const FrameDetection& pred,
                       const EvalOptions& options = {});

/// Sums counts over files; the report's ratios come from the totals.
class MetricsAccumulator {
 public:
  explicit MetricsAccumulator(EvalOptions options = {}) : options_(options) {}
  void add(const FrameDetection& ref, const FrameDetection& pred);
  MetricsReport report() const;

 private:
  EvalOptions options_;
  DetectionCounts sed_;
  LocationAwareCounts loc_;
};

/// Class active in every frame whose start m * hop_s lies in
/// [onset, offset). Throws if two labels of one class share a frame or a
/// class id is out of range.
FrameDetection labels_to_frame_detection(const std::vector<scene::EventLabel>& labels,
                                         std::size_t frames, double hop_s, std::size_t classes);

}  // namespace biseld::eval
