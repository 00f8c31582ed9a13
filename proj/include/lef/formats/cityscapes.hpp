#pragma once

#include <string>

#include "lef/formats/common.hpp"
#include "lef/formats/json_util.hpp"
#include "lef/formats/palette.hpp"
#include "lef/log.hpp"
#include "lef/types.hpp"

namespace lef {

namespace detail {

// "cargroup" -> "car" etc.; group labels share the base class but are
// excluded from perturbation
inline std::string strip_group_suffix(const std::string& label) {
  static const std::string suffix = "group";
  if (label.size() > suffix.size() &&
      label.compare(label.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return label.substr(0, label.size() - suffix.size());
  }
  return label;
}

inline std::string cityscapes_image_id(const std::string& path) {
  std::string stem = path_stem(path);
  static const std::string suffix = "_polygons";
  if (stem.size() > suffix.size() &&
      stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0) {
    stem.resize(stem.size() - suffix.size());
  }
  return stem;
}

}  // namespace detail

// Cityscapes gtFine polygon JSON for one image. Objects keep file order;
// polygons with fewer than 3 vertices are skipped with a warning; vertices
// outside the image are kept and flagged (the original annotations contain
// them). Void and group labels are ingested but never perturbed.
inline GroundTruth parse_cityscapes(const std::string& bytes, const ClassTable& classes,
                                    const std::string& path = "polygons.json") {
  const Json root = parse_json(bytes, path);
  if (!root.is_object()) throw ParseError(path, "top level must be an object");
  GroundTruth truth;
  truth.image_id = detail::cityscapes_image_id(path);
  truth.size.width = static_cast<int>(require_number(root, "imgWidth", path, "document"));
  truth.size.height = static_cast<int>(require_number(root, "imgHeight", path, "document"));
  const Json& objects = require_field(root, "objects", path, "document");
  if (!objects.is_array()) throw ParseError(path, "objects must be an array");

  for (const auto& node : objects) {
    const Json& label_node = require_field(node, "label", path, "object");
    if (!label_node.is_string()) throw ParseError(path, "object label must be a string");
    const std::string label = label_node.get<std::string>();
    const std::string base = detail::strip_group_suffix(label);
    const auto class_id = classes.find_by_name(base);
    if (!class_id) throw ParseError(path, "unknown label '" + label + "'");

    const Json& polygon = require_field(node, "polygon", path, "object '" + label + "'");
    if (!polygon.is_array()) {
      throw ParseError(path, "polygon of '" + label + "' must be an array");
    }
    if (polygon.size() < 3) {
      log_warn(path + ": skipping '" + label + "' polygon with " +
               std::to_string(polygon.size()) + " vertices");
      continue;
    }
    Polygon poly;
    for (const auto& vertex : polygon) {
      if (!vertex.is_array() || vertex.size() != 2 || !vertex[0].is_number() ||
          !vertex[1].is_number()) {
        throw ParseError(path, "polygon vertices of '" + label + "' must be [x, y]");
      }
      poly.vertices.push_back({vertex[0].get<double>(), vertex[1].get<double>()});
    }
    AnnotatedObject obj = make_object(
        truth.image_id, static_cast<std::int64_t>(truth.objects.size()),
        std::move(poly), *class_id, truth.size);
    const bool is_group = base != label;
    obj.perturbable = !is_group && *class_id < classes.perturbable_count();
    if (is_group) obj.source_label = label;
    truth.objects.push_back(std::move(obj));
  }
  return truth;
}

inline std::string write_cityscapes(const GroundTruth& truth, const ClassTable& classes) {
  Json root;
  root["imgHeight"] = truth.size.height;
  root["imgWidth"] = truth.size.width;
  root["objects"] = Json::array();
  for (const AnnotatedObject& obj : truth.objects) {
    if (is_box(obj.shape)) {
      throw Error("cityscapes annotations hold polygons only; object " +
                  std::to_string(obj.object_id) + " is a box");
    }
    Json polygon = Json::array();
    for (const Vec2& v : std::get<Polygon>(obj.shape).vertices) {
      polygon.push_back(Json::array({v.x, v.y}));
    }
    root["objects"].push_back(
        {{"label", obj.source_label ? *obj.source_label
                                    : classes.at(obj.class_id).name},
         {"polygon", std::move(polygon)}});
  }
  return root.dump(2) + "\n";
}

}  // namespace lef
