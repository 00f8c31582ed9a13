#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "lef/error.hpp"
#include "lef/geometry.hpp"
#include "lef/types.hpp"

namespace lef {

inline std::vector<double> coco_ap_thresholds() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back((50 + 5 * i) / 100.0);
  return t;
}

// IoU threshold applied to reference-DNN false positives in the naive and
// score baselines.
inline constexpr double kBaselineIou = 0.3;

struct EvalConfig {
  double iou_threshold = 0.1;    // tau for TP/FP/FN counting
  double score_threshold = 0.5;  // applied to counting only, never to AP
  std::optional<double> min_size_px;
  std::optional<int> max_detections;  // per-image cap on scored predictions
  std::vector<double> ap_thresholds = coco_ap_thresholds();

  void validate() const {
    if (iou_threshold <= 0.0 || iou_threshold > 1.0) {
      throw ConfigError("IoU threshold must be in (0,1]");
    }
    if (score_threshold < 0.0 || score_threshold > 1.0) {
      throw ConfigError("score threshold must be in [0,1]");
    }
    if (max_detections && *max_detections < 1) {
      throw ConfigError("max detections must be >= 1");
    }
    for (std::size_t i = 0; i < ap_thresholds.size(); ++i) {
      if (ap_thresholds[i] <= 0.0 || ap_thresholds[i] > 1.0) {
        throw ConfigError("AP thresholds must be in (0,1]");
      }
      if (i > 0 && ap_thresholds[i] <= ap_thresholds[i - 1]) {
        throw ConfigError("AP thresholds must be strictly increasing");
      }
    }
  }
};

struct Metrics {
  double precision = 0.0;  // percent
  double recall = 0.0;
  double f1 = 0.0;
};

inline Metrics precision_recall_f1(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  Metrics m;
  if (tp + fp > 0) m.precision = 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) m.recall = 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

namespace detail {

// Footprints are computed on first use; box/box pairs never rasterize.
class ShapeIouCache {
 public:
  ShapeIouCache(const Shape* shape, ImageSize size) : shape_(shape), size_(size) {}

  const Shape& shape() const { return *shape_; }

  double iou(ShapeIouCache& other) {
    if (is_box(*shape_) && is_box(*other.shape_)) {
      return box_iou(std::get<Box>(*shape_), std::get<Box>(*other.shape_));
    }
    return shape_iou(*shape_, footprint(), *other.shape_, other.footprint());
  }

 private:
  const RasterFootprint& footprint() {
    if (!fp_) fp_ = rasterize_shape(*shape_, size_);
    return *fp_;
  }

  const Shape* shape_;
  ImageSize size_;
  std::optional<RasterFootprint> fp_;
};

// Greedy COCO-style assignment: predictions already ordered by descending
// score; each takes the unmatched error of maximal IoU (first index wins
// ties) if that IoU reaches tau. Returns the matched error index per
// prediction, plus the winning IoU.
struct GreedyMatch {
  std::vector<std::optional<std::size_t>> matched;
  std::vector<double> best_iou;
};

inline GreedyMatch greedy_match(std::vector<ShapeIouCache>& preds,
                                std::vector<ShapeIouCache>& errors, double tau) {
  GreedyMatch out;
  out.matched.resize(preds.size());
  out.best_iou.assign(preds.size(), 0.0);
  std::vector<bool> taken(errors.size(), false);
  for (std::size_t p = 0; p < preds.size(); ++p) {
    double best = 0.0;
    std::optional<std::size_t> best_idx;
    for (std::size_t e = 0; e < errors.size(); ++e) {
      if (taken[e]) continue;
      const double iou = preds[p].iou(errors[e]);
      if (iou > best) {
        best = iou;
        best_idx = e;
      }
    }
    out.best_iou[p] = best;
    if (best_idx && best >= tau) {
      taken[*best_idx] = true;
      out.matched[p] = best_idx;
    }
  }
  return out;
}

inline std::vector<std::size_t> sort_by_score_desc(const std::vector<Prediction>& preds,
                                                   const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> order = subset;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds[a].score > preds[b].score;
  });
  return order;
}

}  // namespace detail

struct PredictionOutcome {
  std::size_t prediction_index = 0;           // index into the input list
  std::optional<std::size_t> matched_error;   // index into the input LEGT list
  double iou = 0.0;
  bool tp = false;
};

struct MatchResult {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::vector<PredictionOutcome> outcomes;        // score-filtered predictions only
  std::vector<std::size_t> unmatched_errors;      // FN entries (input indices)
};

// TP/FP/FN counting for one image at cfg.iou_threshold. Predictions below
// the score threshold or the size floor are discarded up front, LEGT entries
// below the size floor likewise. Error-type labels are ignored; everything
// is one class.
inline MatchResult match_predictions(const std::vector<Prediction>& preds,
                                     const std::vector<LabelErrorRecord>& errors,
                                     const EvalConfig& cfg, ImageSize size) {
  std::vector<std::size_t> pred_idx;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].score < cfg.score_threshold) continue;
    if (cfg.min_size_px && preds[i].object.area_px < *cfg.min_size_px) continue;
    pred_idx.push_back(i);
  }
  std::vector<std::size_t> error_idx;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (cfg.min_size_px && errors[i].object.area_px < *cfg.min_size_px) continue;
    error_idx.push_back(i);
  }
  std::vector<std::size_t> order = detail::sort_by_score_desc(preds, pred_idx);
  if (cfg.max_detections && order.size() > static_cast<std::size_t>(*cfg.max_detections)) {
    order.resize(static_cast<std::size_t>(*cfg.max_detections));
  }

  std::vector<detail::ShapeIouCache> pred_shapes, error_shapes;
  pred_shapes.reserve(order.size());
  for (std::size_t i : order) pred_shapes.emplace_back(&preds[i].object.shape, size);
  error_shapes.reserve(error_idx.size());
  for (std::size_t i : error_idx) error_shapes.emplace_back(&errors[i].object.shape, size);

  const detail::GreedyMatch match =
      detail::greedy_match(pred_shapes, error_shapes, cfg.iou_threshold);

  MatchResult result;
  std::vector<bool> error_matched(error_idx.size(), false);
  for (std::size_t p = 0; p < order.size(); ++p) {
    PredictionOutcome outcome;
    outcome.prediction_index = order[p];
    outcome.iou = match.best_iou[p];
    if (match.matched[p]) {
      outcome.tp = true;
      outcome.matched_error = error_idx[*match.matched[p]];
      error_matched[*match.matched[p]] = true;
      ++result.tp;
    } else {
      ++result.fp;
    }
    result.outcomes.push_back(outcome);
  }
  for (std::size_t e = 0; e < error_idx.size(); ++e) {
    if (!error_matched[e]) {
      result.unmatched_errors.push_back(error_idx[e]);
      ++result.fn;
    }
  }
  return result;
}

// Reference-DNN false positives as label-error proposals: a prediction
// qualifies when its best IoU against same-class ground truth objects stays
// below 0.3. Scores are discarded.
inline std::vector<AnnotatedObject> naive_baseline(const std::vector<Prediction>& preds,
                                                   const GroundTruth& inspected) {
  std::vector<AnnotatedObject> proposals;
  for (const Prediction& pred : preds) {
    double best = 0.0;
    for (const AnnotatedObject& obj : inspected.objects) {
      if (obj.class_id != pred.object.class_id) continue;
      best = std::max(best, shape_iou(pred.object.shape, obj.shape, inspected.size));
      if (best >= kBaselineIou) break;
    }
    if (best < kBaselineIou) proposals.push_back(pred.object);
  }
  return proposals;
}

// Same proposal set as the naive baseline, with the reference DNN's
// confidence retained for thresholding and AP.
inline std::vector<Prediction> score_baseline(const std::vector<Prediction>& preds,
                                              const GroundTruth& inspected) {
  std::vector<Prediction> proposals;
  for (const Prediction& pred : preds) {
    double best = 0.0;
    for (const AnnotatedObject& obj : inspected.objects) {
      if (obj.class_id != pred.object.class_id) continue;
      best = std::max(best, shape_iou(pred.object.shape, obj.shape, inspected.size));
      if (best >= kBaselineIou) break;
    }
    if (best < kBaselineIou) proposals.push_back(pred);
  }
  return proposals;
}

struct ImageEvalInput {
  std::string image_id;
  ImageSize size;
  std::vector<Prediction> predictions;
  std::vector<LabelErrorRecord> errors;
};

struct ApCurve {
  double iou_threshold = 0.0;
  std::vector<double> sampled_precision;  // at recall 0.00, 0.01, ..., 1.00
  double ap = 0.0;                        // fraction, not percent
};

struct EvalReport {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> ap;  // percent; absent for scoreless proposal sets
  std::vector<ApCurve> curves;

  struct PerType {
    std::int64_t tp = 0;
    std::int64_t fn = 0;
    double recall = 0.0;
  };
  std::map<ErrorType, PerType> per_type;

  struct ImageAssignments {
    std::string image_id;
    std::vector<PredictionOutcome> outcomes;
    std::vector<std::size_t> unmatched_errors;
  };
  std::vector<ImageAssignments> images;
};

namespace detail {

// AP sweeps all size-filtered predictions regardless of score threshold:
// per image and IoU threshold, greedy TP flags in score order; then the
// dataset-wide PR curve is sampled at 101 recall points with interpolated
// (non-increasing) precision.
inline std::optional<double> average_precision_pooled(
    const std::vector<ImageEvalInput>& images, const EvalConfig& cfg,
    std::vector<ApCurve>* curves_out) {
  struct PooledPred {
    double score;
    std::size_t image;
    std::size_t rank;  // position within the image's sorted predictions
  };
  std::vector<PooledPred> pooled;
  std::vector<std::vector<std::size_t>> per_image_order(images.size());
  std::int64_t total_errors = 0;

  for (std::size_t im = 0; im < images.size(); ++im) {
    const auto& image = images[im];
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < image.predictions.size(); ++i) {
      if (cfg.min_size_px && image.predictions[i].object.area_px < *cfg.min_size_px) continue;
      keep.push_back(i);
    }
    per_image_order[im] = sort_by_score_desc(image.predictions, keep);
    if (cfg.max_detections &&
        per_image_order[im].size() > static_cast<std::size_t>(*cfg.max_detections)) {
      per_image_order[im].resize(static_cast<std::size_t>(*cfg.max_detections));
    }
    for (std::size_t r = 0; r < per_image_order[im].size(); ++r) {
      pooled.push_back({image.predictions[per_image_order[im][r]].score, im, r});
    }
    for (const LabelErrorRecord& rec : image.errors) {
      if (cfg.min_size_px && rec.object.area_px < *cfg.min_size_px) continue;
      ++total_errors;
    }
  }
  if (total_errors == 0) return std::nullopt;

  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const PooledPred& a, const PooledPred& b) { return a.score > b.score; });

  // per image: shape caches shared across thresholds
  double ap_sum = 0.0;
  for (double tau : cfg.ap_thresholds) {
    std::vector<std::vector<bool>> tp_flags(images.size());
    for (std::size_t im = 0; im < images.size(); ++im) {
      const auto& image = images[im];
      std::vector<ShapeIouCache> pred_shapes, error_shapes;
      for (std::size_t i : per_image_order[im]) {
        pred_shapes.emplace_back(&image.predictions[i].object.shape, image.size);
      }
      for (const LabelErrorRecord& rec : image.errors) {
        if (cfg.min_size_px && rec.object.area_px < *cfg.min_size_px) continue;
        error_shapes.emplace_back(&rec.object.shape, image.size);
      }
      const GreedyMatch match = greedy_match(pred_shapes, error_shapes, tau);
      tp_flags[im].resize(pred_shapes.size());
      for (std::size_t p = 0; p < pred_shapes.size(); ++p) {
        tp_flags[im][p] = match.matched[p].has_value();
      }
    }

    std::vector<double> precision(pooled.size()), recall(pooled.size());
    std::int64_t tp = 0;
    for (std::size_t k = 0; k < pooled.size(); ++k) {
      if (tp_flags[pooled[k].image][pooled[k].rank]) ++tp;
      precision[k] = static_cast<double>(tp) / static_cast<double>(k + 1);
      recall[k] = static_cast<double>(tp) / static_cast<double>(total_errors);
    }
    for (std::size_t k = precision.size(); k > 1; --k) {
      precision[k - 2] = std::max(precision[k - 2], precision[k - 1]);
    }

    ApCurve curve;
    curve.iou_threshold = tau;
    curve.sampled_precision.resize(101, 0.0);
    for (int j = 0; j <= 100; ++j) {
      const double r = j / 100.0;
      const auto it = std::lower_bound(recall.begin(), recall.end(), r);
      if (it != recall.end()) {
        curve.sampled_precision[static_cast<std::size_t>(j)] =
            precision[static_cast<std::size_t>(it - recall.begin())];
      }
    }
    curve.ap = std::accumulate(curve.sampled_precision.begin(),
                               curve.sampled_precision.end(), 0.0) / 101.0;
    ap_sum += curve.ap;
    if (curves_out) curves_out->push_back(std::move(curve));
  }
  return 100.0 * ap_sum / static_cast<double>(cfg.ap_thresholds.size());
}

}  // namespace detail

// Convenience wrapper matching the per-operation contract: AP of one scored
// proposal set against one LEGT list.
inline std::optional<double> average_precision(const std::vector<Prediction>& preds,
                                               const std::vector<LabelErrorRecord>& errors,
                                               const EvalConfig& cfg, ImageSize size,
                                               const std::string& image_id = "image") {
  std::vector<ImageEvalInput> images(1);
  images[0].image_id = image_id;
  images[0].size = size;
  images[0].predictions = preds;
  images[0].errors = errors;
  return detail::average_precision_pooled(images, cfg, nullptr);
}

// Dataset-wide evaluation: counts are pooled over images before computing
// the metrics; AP is computed from the pooled prediction list. Images
// missing from the proposal side simply contribute FNs via empty prediction
// lists. has_scores=false marks scoreless proposal sets (naive baseline):
// the score threshold is meaningless there and AP is not reported.
inline EvalReport evaluate_dataset(const std::vector<ImageEvalInput>& images,
                                   const EvalConfig& cfg, bool has_scores = true) {
  cfg.validate();
  std::unordered_set<std::string> seen;
  for (const auto& image : images) {
    if (!seen.insert(image.image_id).second) {
      throw Error("duplicate image id '" + image.image_id + "' in evaluation input");
    }
  }

  EvalReport report;
  for (const auto& image : images) {
    MatchResult match = match_predictions(image.predictions, image.errors, cfg, image.size);
    report.tp += match.tp;
    report.fp += match.fp;
    report.fn += match.fn;
    for (const PredictionOutcome& outcome : match.outcomes) {
      if (outcome.tp) {
        ++report.per_type[image.errors[*outcome.matched_error].error_type].tp;
      }
    }
    for (std::size_t e : match.unmatched_errors) {
      ++report.per_type[image.errors[e].error_type].fn;
    }
    report.images.push_back({image.image_id, std::move(match.outcomes),
                             std::move(match.unmatched_errors)});
  }
  const Metrics m = precision_recall_f1(report.tp, report.fp, report.fn);
  report.precision = m.precision;
  report.recall = m.recall;
  report.f1 = m.f1;
  for (auto& [type, counts] : report.per_type) {
    counts.recall = precision_recall_f1(counts.tp, 0, counts.fn).recall;
  }
  if (has_scores) {
    report.ap = detail::average_precision_pooled(images, cfg, &report.curves);
  }
  return report;
}

}  // namespace lef
