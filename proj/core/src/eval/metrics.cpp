#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "biseld/error.hpp"
#include "biseld/eval/metrics.hpp"

namespace biseld::eval {

std::string to_string(Granularity g) {
  return g == Granularity::segment ? "segment" : "frame";
}

Granularity granularity_from_string(const std::string& name) {
  if (name == "segment") return Granularity::segment;
  if (name == "frame") return Granularity::frame;
  throw Error(fmt::format("unknown granularity '{}'", name));
}

std::optional<double> DetectionCounts::error_rate() const {
  if (reference == 0) return std::nullopt;
  return static_cast<double>(substitutions + deletions + insertions) / reference;
}

double DetectionCounts::f_score() const {
  const long long denom = 2 * tp + fp + fn;
  return denom == 0 ? 1.0 : 2.0 * tp / denom;
}

void DetectionCounts::merge(const DetectionCounts& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  reference += o.reference;
  if (per_class.size() < o.per_class.size()) per_class.resize(o.per_class.size());
  for (std::size_t c = 0; c < o.per_class.size(); ++c) {
    per_class[c].tp += o.per_class[c].tp;
    per_class[c].fp += o.per_class[c].fp;
    per_class[c].fn += o.per_class[c].fn;
  }
}

double LocalizationCounts::le_cd_deg() const {
  if (pairs > 0) return angle_sum_deg / pairs;
  return (reference_pairs > 0 || predicted_pairs > 0) ? 180.0 : 0.0;
}

double LocalizationCounts::lr_cd() const {
  return reference_pairs == 0 ? 1.0 : static_cast<double>(pairs) / reference_pairs;
}

void LocalizationCounts::merge(const LocalizationCounts& o) {
  pairs += o.pairs;
  reference_pairs += o.reference_pairs;
  predicted_pairs += o.predicted_pairs;
  angle_sum_deg += o.angle_sum_deg;
}

namespace {

void check_compatible(const FrameDetection& ref, const FrameDetection& pred) {
  if (ref.frames() != pred.frames()) {
    throw Error(fmt::format("frame count mismatch: reference {} vs prediction {}", ref.frames(),
                            pred.frames()));
  }
  if (ref.classes() != pred.classes()) {
    throw Error(fmt::format("class count mismatch: reference {} vs prediction {}", ref.classes(),
                            pred.classes()));
  }
  if (std::abs(ref.frame_hop_s() - pred.frame_hop_s()) > 1e-12) {
    throw Error("frame hop mismatch between reference and prediction");
  }
}

std::size_t frames_per_segment(const FrameDetection& det, double segment_s) {
  if (!(segment_s > 0.0)) throw Error("segment length must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(segment_s / det.frame_hop_s())));
}

/// Normalized mean of the active frames' unit vectors in [first, last).
std::optional<Direction> segment_direction(const FrameDetection& det, std::size_t first,
                                           std::size_t last, std::size_t cls) {
  Vec3 sum{};
  std::optional<Direction> first_active;
  for (std::size_t m = first; m < last; ++m) {
    const auto& d = det.at(m, cls);
    if (!d) continue;
    if (!first_active) first_active = d;
    const Vec3 v = direction_to_vector(*d);
    for (int i = 0; i < 3; ++i) sum[i] += v[i];
  }
  if (!first_active) return std::nullopt;
  const double norm = std::sqrt(sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]);
  // Opposing directions can cancel; fall back to the first active frame.
  if (norm < 1e-9) return first_active;
  return vector_to_direction(sum);
}

bool any_active(const FrameDetection& det, std::size_t first, std::size_t last, std::size_t cls) {
  for (std::size_t m = first; m < last; ++m) {
    if (det.active(m, cls)) return true;
  }
  return false;
}

void add_segment_errors(DetectionCounts& counts, long long seg_fn, long long seg_fp,
                        long long seg_ref) {
  counts.substitutions += std::min(seg_fn, seg_fp);
  counts.deletions += std::max(0LL, seg_fn - seg_fp);
  counts.insertions += std::max(0LL, seg_fp - seg_fn);
  counts.reference += seg_ref;
}

}  // namespace

DetectionCounts segment_sed_metrics(const FrameDetection& ref, const FrameDetection& pred,
                                    double segment_s) {
  check_compatible(ref, pred);
  const std::size_t fps = frames_per_segment(ref, segment_s);
  const std::size_t classes = ref.classes();
  DetectionCounts counts;
  counts.per_class.resize(classes);
  for (std::size_t first = 0; first < ref.frames(); first += fps) {
    const std::size_t last = std::min(first + fps, ref.frames());
    long long seg_fn = 0, seg_fp = 0, seg_ref = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      const bool r = any_active(ref, first, last, c);
      const bool p = any_active(pred, first, last, c);
      seg_ref += r;
      if (r && p) {
        ++counts.tp;
        ++counts.per_class[c].tp;
      } else if (r) {
        ++seg_fn;
        ++counts.per_class[c].fn;
      } else if (p) {
        ++seg_fp;
        ++counts.per_class[c].fp;
      }
    }
    counts.fn += seg_fn;
    counts.fp += seg_fp;
    add_segment_errors(counts, seg_fn, seg_fp, seg_ref);
  }
  return counts;
}

namespace {

LocalizationCounts localization_pairs(const FrameDetection& ref, const FrameDetection& pred,
                                      std::size_t fps) {
  LocalizationCounts loc;
  for (std::size_t first = 0; first < ref.frames(); first += fps) {
    const std::size_t last = std::min(first + fps, ref.frames());
    for (std::size_t c = 0; c < ref.classes(); ++c) {
      const auto r = segment_direction(ref, first, last, c);
      const auto p = segment_direction(pred, first, last, c);
      loc.reference_pairs += r.has_value();
      loc.predicted_pairs += p.has_value();
      if (r && p) {
        ++loc.pairs;
        loc.angle_sum_deg += angular_distance(*r, *p);
      }
    }
  }
  return loc;
}

}  // namespace

LocationAwareCounts location_aware_metrics(const FrameDetection& ref, const FrameDetection& pred,
                                           const EvalOptions& options) {
  check_compatible(ref, pred);
  const std::size_t fps = frames_per_segment(ref, options.segment_s);
  const std::size_t classes = ref.classes();
  LocationAwareCounts out;
  DetectionCounts& g = out.gated;
  g.per_class.resize(classes);
  for (std::size_t first = 0; first < ref.frames(); first += fps) {
    const std::size_t last = std::min(first + fps, ref.frames());
    long long seg_fn = 0, seg_fp = 0, seg_ref = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      const auto r = segment_direction(ref, first, last, c);
      const auto p = segment_direction(pred, first, last, c);
      seg_ref += r.has_value();
      if (r && p) {
        if (angular_distance(*r, *p) < options.angle_threshold_deg) {
          ++g.tp;
          ++g.per_class[c].tp;
        } else {
          ++seg_fn;
          ++seg_fp;
          ++g.per_class[c].fn;
          ++g.per_class[c].fp;
        }
      } else if (r) {
        ++seg_fn;
        ++g.per_class[c].fn;
      } else if (p) {
        ++seg_fp;
        ++g.per_class[c].fp;
      }
    }
    g.fn += seg_fn;
    g.fp += seg_fp;
    add_segment_errors(g, seg_fn, seg_fp, seg_ref);
  }
  out.localization =
      localization_pairs(ref, pred, options.granularity == Granularity::frame ? 1 : fps);
  return out;
}

SeldErrors seld_error(double er20, double f20, double le_cd_deg, double lr_cd) {
  SeldErrors e;
  e.sed_error = (er20 + (1.0 - f20)) / 2.0;
  e.doa_error = (le_cd_deg / 180.0 + (1.0 - lr_cd)) / 2.0;
  e.seld_error = (e.sed_error + e.doa_error) / 2.0;
  return e;
}

MetricsReport MetricsReport::from_counts(const DetectionCounts& sed,
                                         const LocationAwareCounts& loc) {
  MetricsReport r;
  r.sed_counts = sed;
  r.gated_counts = loc.gated;
  r.localization = loc.localization;
  r.er = sed.error_rate();
  r.f = sed.f_score();
  r.er20 = loc.gated.error_rate();
  r.f20 = loc.gated.f_score();
  r.le_cd_deg = loc.localization.le_cd_deg();
  r.lr_cd = loc.localization.lr_cd();
  const double er20 = r.er20.value_or(static_cast<double>(loc.gated.insertions));
  const SeldErrors e = eval::seld_error(er20, r.f20, r.le_cd_deg, r.lr_cd);
  r.sed_error = e.sed_error;
  r.doa_error = e.doa_error;
  r.seld_error = e.seld_error;
  return r;
}

namespace {

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json counts_json(const DetectionCounts& c) {
  auto per_class = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < c.per_class.size(); ++k) {
    per_class.push_back({{"class_id", k},
                         {"tp", c.per_class[k].tp},
                         {"fp", c.per_class[k].fp},
                         {"fn", c.per_class[k].fn}});
  }
  return {{"tp", c.tp},
          {"fp", c.fp},
          {"fn", c.fn},
          {"substitutions", c.substitutions},
          {"deletions", c.deletions},
          {"insertions", c.insertions},
          {"reference", c.reference},
          {"per_class", per_class}};
}

}  // namespace

nlohmann::ordered_json MetricsReport::to_json() const {
  return {{"er20", optional_json(er20)},
          {"f20", f20},
          {"le_cd_deg", le_cd_deg},
          {"lr_cd", lr_cd},
          {"sed_error", sed_error},
          {"doa_error", doa_error},
          {"seld_error", seld_error},
          {"er", optional_json(er)},
          {"f", f},
          {"counts",
           {{"sed", counts_json(sed_counts)},
            {"location_aware", counts_json(gated_counts)},
            {"localization",
             {{"pairs", localization.pairs},
              {"reference_pairs", localization.reference_pairs},
              {"predicted_pairs", localization.predicted_pairs},
              {"angle_sum_deg", localization.angle_sum_deg}}}}}};
}

MetricsReport evaluate(const FrameDetection& ref, const FrameDetection& pred,
                       const EvalOptions& options) {
  return MetricsReport::from_counts(segment_sed_metrics(ref, pred, options.segment_s),
                                    location_aware_metrics(ref, pred, options));
}

void MetricsAccumulator::add(const FrameDetection& ref, const FrameDetection& pred) {
  sed_.merge(segment_sed_metrics(ref, pred, options_.segment_s));
  const auto loc = location_aware_metrics(ref, pred, options_);
  loc_.gated.merge(loc.gated);
  loc_.localization.merge(loc.localization);
}

MetricsReport MetricsAccumulator::report() const {
  return MetricsReport::from_counts(sed_, loc_);
}

FrameDetection labels_to_frame_detection(const std::vector<scene::EventLabel>& labels,
                                         std::size_t frames, double hop_s, std::size_t classes) {
  FrameDetection det(frames, classes, hop_s);
  const double end_s = frames * hop_s;
  for (const auto& l : labels) {
    if (l.class_id < 0 || static_cast<std::size_t>(l.class_id) >= classes) {
      throw Error(fmt::format("label class {} outside 0..{}", l.class_id, classes - 1));
    }
    if (l.onset_s < 0.0 || l.offset_s > end_s + 1e-6) {
      throw Error(fmt::format("label [{}, {}] s outside the {} s frame range", l.onset_s,
                              l.offset_s, end_s));
    }
    // Frame m is covered when onset <= m * hop < offset; the epsilon absorbs
    // the representation error of hop.
    const auto first = static_cast<std::size_t>(std::max(0.0, std::ceil(l.onset_s / hop_s - 1e-9)));
    const auto last = std::min(
        frames, static_cast<std::size_t>(std::max(0.0, std::ceil(l.offset_s / hop_s - 1e-9))));
    const Direction d(l.azimuth_deg, l.elevation_deg);
    const auto cls = static_cast<std::size_t>(l.class_id);
    for (std::size_t m = first; m < last; ++m) {
      if (det.active(m, cls)) {
        throw Error(fmt::format("labels of class {} overlap at frame {}", l.class_id, m));
      }
      det.set(m, cls, d);
    }
  }
  return det;
}

}  // namespace biseld::eval
