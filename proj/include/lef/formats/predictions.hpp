#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lef/dataset.hpp"
#include "lef/formats/coco.hpp"
#include "lef/formats/json_util.hpp"
#include "lef/geometry.hpp"
#include "lef/types.hpp"

namespace lef {

// Greedy non-maximum suppression over one image's predictions: descending
// score (ties by input order); a prediction is removed when it overlaps an
// already kept one with IoU >= threshold. Applies across classes.
inline std::vector<Prediction> nms_filter(const std::vector<Prediction>& preds,
                                          ImageSize size, double iou_threshold) {
  std::vector<std::size_t> order(preds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds[a].score > preds[b].score;
  });
  std::vector<std::size_t> kept;
  for (std::size_t candidate : order) {
    bool suppressed = false;
    for (std::size_t keep : kept) {
      if (shape_iou(preds[candidate].object.shape, preds[keep].object.shape, size) >=
          iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(candidate);
  }
  std::sort(kept.begin(), kept.end());  // restore input order
  std::vector<Prediction> out;
  out.reserve(kept.size());
  for (std::size_t i : kept) out.push_back(preds[i]);
  return out;
}

struct PredictionReadOptions {
  std::optional<double> nms_iou;      // cleanup of duplicate reference boxes
  std::optional<double> score_floor;  // drop low-confidence predictions
};

struct PredictionFile {
  std::vector<Prediction> predictions;  // grouped by image, file order within
  bool has_scores = true;
};

// COCO-results-style JSON: [{image_id, category_id, bbox|segmentation,
// score}]. A file where no entry carries a score is a scoreless proposal set
// (score fixed at 1.0, has_scores=false); mixing is an error.
inline PredictionFile read_predictions(
    const std::string& bytes, const ClassTable& classes,
    const std::function<std::optional<ImageSize>(const std::string&)>& size_of,
    const PredictionReadOptions& opts = {},
    const std::string& path = "predictions.json") {
  const Json root = parse_json(bytes, path);
  if (!root.is_array()) throw ParseError(path, "top level must be an array");

  PredictionFile file;
  std::size_t scored = 0;
  std::vector<std::string> image_order;
  std::unordered_map<std::string, std::vector<Prediction>> by_image;

  for (std::size_t i = 0; i < root.size(); ++i) {
    const Json& node = root[i];
    const std::string where = "prediction " + std::to_string(i);
    const std::string image_id = detail::image_id_to_string(
        require_field(node, "image_id", path, where), path, where);
    const auto size = size_of(image_id);
    if (!size) throw ParseError(path, where + ": unknown image id '" + image_id + "'");

    const std::int64_t cat =
        static_cast<std::int64_t>(require_number(node, "category_id", path, where));
    const auto class_id = classes.find_by_source_id(cat);
    if (!class_id) {
      throw ParseError(path, where + ": unknown category id " + std::to_string(cat));
    }

    Shape shape;
    const auto seg_it = node.find("segmentation");
    if (seg_it != node.end() && !seg_it->is_null() &&
        !(seg_it->is_array() && seg_it->empty())) {
      auto polys = detail::coco_segmentation_to_polygons(*seg_it, path, where);
      if (polys.size() != 1) {
        throw ParseError(path, where + ": prediction segmentation must be one polygon");
      }
      shape = std::move(polys[0]);
    } else if (node.contains("bbox")) {
      shape = detail::coco_bbox_to_box(node["bbox"], path, where);
    } else {
      throw ParseError(path, where + ": needs bbox or segmentation");
    }

    double score = 1.0;
    if (node.contains("score") && !node["score"].is_null()) {
      if (!node["score"].is_number()) {
        throw ParseError(path, where + ": score must be a number");
      }
      score = node["score"].get<double>();
      if (score < 0.0 || score > 1.0) {
        throw ParseError(path, where + ": score " + std::to_string(score) +
                                   " outside [0,1]");
      }
      ++scored;
    }

    auto it = by_image.find(image_id);
    if (it == by_image.end()) {
      image_order.push_back(image_id);
      it = by_image.emplace(image_id, std::vector<Prediction>{}).first;
    }
    it->second.push_back(
        {make_object(image_id, static_cast<std::int64_t>(it->second.size()),
                     std::move(shape), *class_id, *size),
         score});
  }

  if (scored != 0 && scored != root.size()) {
    throw ParseError(path, "some predictions carry scores and some do not");
  }
  file.has_scores = root.empty() || scored == root.size();

  for (const std::string& image_id : image_order) {
    std::vector<Prediction>& preds = by_image[image_id];
    if (opts.nms_iou) preds = nms_filter(preds, *size_of(image_id), *opts.nms_iou);
    for (Prediction& pred : preds) {
      if (opts.score_floor && pred.score < *opts.score_floor) continue;
      file.predictions.push_back(std::move(pred));
    }
  }
  return file;
}

// Proposal / prediction writer. Numeric image ids are restored through the
// record lookup when available.
inline std::string write_predictions(
    const std::vector<Prediction>& preds, const ClassTable& classes,
    const std::function<std::optional<ImageRecord>(const std::string&)>& record_of,
    bool with_scores) {
  Json root = Json::array();
  for (const Prediction& pred : preds) {
    Json node;
    const auto rec = record_of(pred.object.image_id);
    node["image_id"] = rec ? detail::image_id_json(*rec) : Json(pred.object.image_id);
    node["category_id"] = classes.at(pred.object.class_id).source_id;
    if (is_box(pred.object.shape)) {
      node["bbox"] = detail::box_to_coco_bbox(std::get<Box>(pred.object.shape));
    } else {
      node["segmentation"] =
          detail::polygon_to_coco_segmentation(std::get<Polygon>(pred.object.shape));
    }
    if (with_scores) node["score"] = pred.score;
    root.push_back(std::move(node));
  }
  return root.dump(2) + "\n";
}

}  // namespace lef
