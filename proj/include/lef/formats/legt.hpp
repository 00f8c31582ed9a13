#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "lef/dataset.hpp"
#include "lef/formats/coco.hpp"
#include "lef/formats/json_util.hpp"
#include "lef/perturb.hpp"
#include "lef/types.hpp"

namespace lef {

// Label error ground truth for one perturbed dataset copy: COCO-style
// annotations extended with error_type / original_category_id, plus an echo
// of the producing perturbation configuration.
struct LegtDocument {
  std::vector<std::pair<std::int64_t, std::string>> categories;  // (source id, name)
  std::vector<ImageRecord> images;
  std::vector<std::vector<LabelErrorRecord>> per_image;  // parallel to images
  PerturbationConfig config;
  int copy_index = 0;

  std::size_t total_errors() const {
    std::size_t n = 0;
    for (const auto& records : per_image) n += records.size();
    return n;
  }
};

namespace detail {

inline Json perturbation_to_json(const PerturbationConfig& cfg, int copy_index) {
  Json node;
  node["q"] = cfg.rate;
  node["copies"] = cfg.copies;
  node["copy"] = copy_index;
  node["seed"] = cfg.seed;
  Json types = Json::array();
  for (ErrorType t : cfg.error_types) types.push_back(to_string(t));
  node["error_types"] = std::move(types);
  node["shape_mode"] = to_string(cfg.spawn_shape);
  if (cfg.bounds.min_px) node["area_min"] = *cfg.bounds.min_px;
  if (cfg.bounds.max_px) node["area_max"] = *cfg.bounds.max_px;
  if (cfg.spawn_shape == SpawnShape::polygon) {
    node["radius_min"] = cfg.radius_min;
    node["radius_max"] = cfg.radius_max;
    node["irregularity"] = cfg.irregularity;
    node["spikeness"] = cfg.spikeness;
    node["max_vertices"] = cfg.max_vertices;
  }
  return node;
}

inline PerturbationConfig perturbation_from_json(const Json& node,
                                                 const std::string& path) {
  PerturbationConfig cfg;
  cfg.rate = require_number(node, "q", path, "perturbation");
  cfg.copies = static_cast<int>(require_number(node, "copies", path, "perturbation"));
  cfg.seed = require_field(node, "seed", path, "perturbation").get<std::uint64_t>();
  cfg.error_types.clear();
  for (const auto& t : require_field(node, "error_types", path, "perturbation")) {
    cfg.error_types.push_back(error_type_from_string(t.get<std::string>()));
  }
  cfg.spawn_shape = spawn_shape_from_string(
      require_field(node, "shape_mode", path, "perturbation").get<std::string>());
  if (node.contains("area_min")) cfg.bounds.min_px = node["area_min"].get<double>();
  if (node.contains("area_max")) cfg.bounds.max_px = node["area_max"].get<double>();
  if (node.contains("radius_min")) cfg.radius_min = node["radius_min"].get<int>();
  if (node.contains("radius_max")) cfg.radius_max = node["radius_max"].get<int>();
  if (node.contains("irregularity")) cfg.irregularity = node["irregularity"].get<double>();
  if (node.contains("spikeness")) cfg.spikeness = node["spikeness"].get<double>();
  if (node.contains("max_vertices")) cfg.max_vertices = node["max_vertices"].get<int>();
  return cfg;
}

}  // namespace detail

inline std::string write_legt(const LegtDocument& doc) {
  Json root;
  root["categories"] = Json::array();
  for (const auto& [source_id, name] : doc.categories) {
    root["categories"].push_back({{"id", source_id}, {"name", name}});
  }
  root["images"] = Json::array();
  for (const ImageRecord& rec : doc.images) {
    root["images"].push_back({{"id", detail::image_id_json(rec)},
                              {"width", rec.size.width},
                              {"height", rec.size.height}});
  }
  root["annotations"] = Json::array();
  std::int64_t next_id = 1;
  for (std::size_t i = 0; i < doc.per_image.size(); ++i) {
    for (const LabelErrorRecord& rec : doc.per_image[i]) {
      const AnnotatedObject& obj = rec.object;
      Json ann{{"id", next_id++},
               {"image_id", detail::image_id_json(doc.images[i])},
               {"object_id", obj.object_id},
               {"category_id", doc.categories[static_cast<std::size_t>(obj.class_id)].first},
               {"area", obj.area_px},
               {"error_type", to_string(rec.error_type)}};
      if (rec.original_class_id) {
        ann["original_category_id"] =
            doc.categories[static_cast<std::size_t>(*rec.original_class_id)].first;
      }
      if (is_box(obj.shape)) {
        ann["bbox"] = detail::box_to_coco_bbox(std::get<Box>(obj.shape));
      } else {
        const Polygon& poly = std::get<Polygon>(obj.shape);
        ann["segmentation"] = detail::polygon_to_coco_segmentation(poly);
        ann["bbox"] = detail::box_to_coco_bbox(bounding_box(poly));
      }
      if (!obj.perturbable) ann["perturbable"] = false;
      if (obj.out_of_bounds) ann["out_of_bounds"] = true;
      if (obj.source_label) ann["source_label"] = *obj.source_label;
      root["annotations"].push_back(std::move(ann));
    }
  }
  root["perturbation"] = detail::perturbation_to_json(doc.config, doc.copy_index);
  return root.dump(2) + "\n";
}

inline LegtDocument read_legt(const std::string& bytes,
                              const std::string& path = "legt.json") {
  const Json root = parse_json(bytes, path);
  if (!root.is_object()) throw ParseError(path, "top level must be an object");

  LegtDocument doc;
  std::unordered_map<std::int64_t, int> class_of_source;
  for (const auto& cat : require_field(root, "categories", path, "document")) {
    const std::int64_t id =
        static_cast<std::int64_t>(require_number(cat, "id", path, "category"));
    class_of_source[id] = static_cast<int>(doc.categories.size());
    doc.categories.emplace_back(
        id, require_field(cat, "name", path, "category").get<std::string>());
  }

  std::unordered_map<std::string, std::size_t> image_index;
  for (const auto& img : require_field(root, "images", path, "document")) {
    ImageRecord rec;
    const Json& id = require_field(img, "id", path, "image");
    rec.id = detail::image_id_to_string(id, path, "image");
    rec.source_id = id.is_number_integer() ? id.get<std::int64_t>() : 0;
    rec.size.width = static_cast<int>(require_number(img, "width", path, "image"));
    rec.size.height = static_cast<int>(require_number(img, "height", path, "image"));
    if (image_index.count(rec.id)) {
      throw ParseError(path, "duplicate image id '" + rec.id + "'");
    }
    image_index[rec.id] = doc.images.size();
    doc.images.push_back(std::move(rec));
  }
  doc.per_image.resize(doc.images.size());

  for (const auto& ann : require_field(root, "annotations", path, "document")) {
    const std::string where =
        "annotation " + (ann.contains("id") ? ann["id"].dump() : std::string("?"));
    const std::string image_id = detail::image_id_to_string(
        require_field(ann, "image_id", path, where), path, where);
    const auto img_it = image_index.find(image_id);
    if (img_it == image_index.end()) {
      throw ParseError(path, where + ": unknown image id '" + image_id + "'");
    }
    const ImageRecord& rec = doc.images[img_it->second];

    const std::int64_t cat =
        static_cast<std::int64_t>(require_number(ann, "category_id", path, where));
    const auto cls = class_of_source.find(cat);
    if (cls == class_of_source.end()) {
      throw ParseError(path, where + ": unknown category id " + std::to_string(cat));
    }

    LabelErrorRecord record;
    record.error_type = error_type_from_string(
        require_field(ann, "error_type", path, where).get<std::string>());
    if (record.error_type == ErrorType::flip && !ann.contains("original_category_id")) {
      throw ParseError(path, where + ": flip records need original_category_id");
    }
    if (ann.contains("original_category_id")) {
      const std::int64_t orig = ann["original_category_id"].get<std::int64_t>();
      const auto orig_it = class_of_source.find(orig);
      if (orig_it == class_of_source.end()) {
        throw ParseError(path, where + ": unknown original category id " +
                                   std::to_string(orig));
      }
      record.original_class_id = orig_it->second;
    }

    Shape shape;
    const auto seg_it = ann.find("segmentation");
    if (seg_it != ann.end() && !seg_it->is_null()) {
      auto polys = detail::coco_segmentation_to_polygons(*seg_it, path, where);
      if (polys.size() != 1) {
        throw ParseError(path, where + ": LEGT entries hold one polygon each");
      }
      shape = std::move(polys[0]);
    } else if (ann.contains("bbox")) {
      shape = detail::coco_bbox_to_box(ann["bbox"], path, where);
    } else {
      throw ParseError(path, where + ": needs bbox or segmentation");
    }

    record.object = make_object(
        image_id,
        ann.contains("object_id") ? ann["object_id"].get<std::int64_t>() : 0,
        std::move(shape), cls->second, rec.size);
    if (record.error_type == ErrorType::flip &&
        record.original_class_id == record.object.class_id) {
      throw ParseError(path, where + ": flip record keeps its original class");
    }
    if (ann.contains("perturbable")) record.object.perturbable = ann["perturbable"].get<bool>();
    if (ann.contains("source_label")) {
      record.object.source_label = ann["source_label"].get<std::string>();
    }
    doc.per_image[img_it->second].push_back(std::move(record));
  }

  // absent for hand-curated (real label error) documents
  if (root.contains("perturbation")) {
    doc.config = detail::perturbation_from_json(root["perturbation"], path);
    if (root["perturbation"].contains("copy")) {
      doc.copy_index = root["perturbation"]["copy"].get<int>();
    }
  }
  return doc;
}

}  // namespace lef
