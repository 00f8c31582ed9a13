#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lef/dataset.hpp"
#include "lef/formats/json_util.hpp"
#include "lef/formats/palette.hpp"
#include "lef/types.hpp"

namespace lef {

namespace detail {

inline Json box_to_coco_bbox(const Box& b) {
  return Json::array({b.x, b.y, b.width, b.height});
}

inline Box coco_bbox_to_box(const Json& bbox, const std::string& path,
                            const std::string& where) {
  if (!bbox.is_array() || bbox.size() != 4) {
    throw ParseError(path, where + ": bbox must be [x, y, width, height]");
  }
  for (const auto& v : bbox) {
    if (!v.is_number()) throw ParseError(path, where + ": bbox entries must be numbers");
  }
  return Box{bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(),
             bbox[3].get<double>()};
}

inline Json polygon_to_coco_segmentation(const Polygon& poly) {
  Json ring = Json::array();
  for (const Vec2& v : poly.vertices) {
    ring.push_back(v.x);
    ring.push_back(v.y);
  }
  return Json::array({ring});
}

// COCO-style polygon segmentation: a list of rings, each a flat coordinate
// list. RLE masks (dict form) are not supported.
inline std::vector<Polygon> coco_segmentation_to_polygons(const Json& seg,
                                                          const std::string& path,
                                                          const std::string& where) {
  if (seg.is_object()) {
    throw ParseError(path, where + ": RLE segmentation is not supported; "
                           "convert masks to polygons first");
  }
  if (!seg.is_array()) {
    throw ParseError(path, where + ": segmentation must be a list of polygons");
  }
  std::vector<Polygon> polygons;
  for (const auto& ring : seg) {
    if (!ring.is_array() || ring.size() < 6 || ring.size() % 2 != 0) {
      throw ParseError(path, where + ": polygon ring needs at least 3 (x,y) pairs");
    }
    Polygon poly;
    for (std::size_t i = 0; i + 1 < ring.size(); i += 2) {
      if (!ring[i].is_number() || !ring[i + 1].is_number()) {
        throw ParseError(path, where + ": polygon coordinates must be numbers");
      }
      poly.vertices.push_back({ring[i].get<double>(), ring[i + 1].get<double>()});
    }
    polygons.push_back(std::move(poly));
  }
  return polygons;
}

inline std::string image_id_to_string(const Json& id, const std::string& path,
                                      const std::string& where) {
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return std::to_string(id.get<std::int64_t>());
  throw ParseError(path, where + ": image id must be an integer or a string");
}

}  // namespace detail

// COCO instances JSON -> document. Category ids are remapped to contiguous
// [0, C) in ascending source-id order; original ids are kept in the class
// table for writing. Annotations with polygon segmentation win over bbox;
// each ring becomes one object.
inline DatasetDocument parse_coco(const std::string& bytes,
                                  const std::string& path = "coco.json") {
  const Json root = parse_json(bytes, path);
  if (!root.is_object()) throw ParseError(path, "top level must be an object");
  const Json& categories = require_field(root, "categories", path, "document");
  const Json& images = require_field(root, "images", path, "document");
  const Json& annotations = require_field(root, "annotations", path, "document");
  if (!categories.is_array() || !images.is_array() || !annotations.is_array()) {
    throw ParseError(path, "categories/images/annotations must be arrays");
  }

  DatasetDocument doc;
  doc.format = DatasetFormat::coco;
  doc.source_path = path;

  std::vector<std::pair<std::int64_t, std::string>> cats;
  for (const auto& cat : categories) {
    const std::int64_t id =
        static_cast<std::int64_t>(require_number(cat, "id", path, "category"));
    const Json& name = require_field(cat, "name", path, "category");
    if (!name.is_string()) throw ParseError(path, "category name must be a string");
    cats.emplace_back(id, name.get<std::string>());
  }
  if (cats.empty()) throw ParseError(path, "categories must not be empty");
  std::sort(cats.begin(), cats.end());
  std::vector<ClassInfo> classes;
  std::unordered_map<std::int64_t, int> class_of_source;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    if (class_of_source.count(cats[i].first)) {
      throw ParseError(path, "duplicate category id " + std::to_string(cats[i].first));
    }
    class_of_source[cats[i].first] = static_cast<int>(i);
    classes.push_back({static_cast<int>(i), cats[i].second,
                       palette_color_for_class(static_cast<int>(i)), cats[i].first});
  }
  doc.classes = ClassTable(std::move(classes));

  std::unordered_map<std::string, std::size_t> image_index;
  for (const auto& img : images) {
    ImageRecord rec;
    const Json& id = require_field(img, "id", path, "image");
    rec.id = detail::image_id_to_string(id, path, "image");
    rec.source_id = id.is_number_integer() ? id.get<std::int64_t>() : 0;
    rec.size.width = static_cast<int>(require_number(img, "width", path, "image " + rec.id));
    rec.size.height = static_cast<int>(require_number(img, "height", path, "image " + rec.id));
    if (img.contains("file_name") && img["file_name"].is_string()) {
      rec.file_name = img["file_name"].get<std::string>();
    }
    if (image_index.count(rec.id)) {
      throw ParseError(path, "duplicate image id '" + rec.id + "'");
    }
    image_index[rec.id] = doc.images.size();
    GroundTruth truth;
    truth.image_id = rec.id;
    truth.size = rec.size;
    doc.images.push_back(std::move(rec));
    doc.truths.push_back(std::move(truth));
  }

  for (const auto& ann : annotations) {
    const std::string where =
        "annotation " + (ann.contains("id") ? ann["id"].dump() : std::string("?"));
    const std::string image_id = detail::image_id_to_string(
        require_field(ann, "image_id", path, where), path, where);
    const auto img_it = image_index.find(image_id);
    if (img_it == image_index.end()) {
      throw ParseError(path, where + ": unknown image id '" + image_id + "'");
    }
    const std::int64_t cat_id =
        static_cast<std::int64_t>(require_number(ann, "category_id", path, where));
    const auto cls_it = class_of_source.find(cat_id);
    if (cls_it == class_of_source.end()) {
      throw ParseError(path, where + ": unknown category id " + std::to_string(cat_id));
    }
    GroundTruth& truth = doc.truths[img_it->second];
    const auto next_object_id = [&truth] {
      return static_cast<std::int64_t>(truth.objects.size());
    };
    const auto seg_it = ann.find("segmentation");
    if (seg_it != ann.end() && !seg_it->is_null() &&
        !(seg_it->is_array() && seg_it->empty())) {
      for (Polygon& poly :
           detail::coco_segmentation_to_polygons(*seg_it, path, where)) {
        truth.objects.push_back(make_object(image_id, next_object_id(),
                                            std::move(poly), cls_it->second,
                                            truth.size));
      }
    } else if (ann.contains("bbox")) {
      truth.objects.push_back(
          make_object(image_id, next_object_id(),
                      detail::coco_bbox_to_box(ann["bbox"], path, where),
                      cls_it->second, truth.size));
    } else {
      throw ParseError(path, where + ": needs bbox or segmentation");
    }
  }
  doc.validate();
  return doc;
}

namespace detail {

// numeric ids round-trip as numbers, anything else as the original string
inline Json image_id_json(const ImageRecord& rec) {
  if (std::to_string(rec.source_id) == rec.id) return Json(rec.source_id);
  return Json(rec.id);
}

}  // namespace detail

inline std::string write_coco(const DatasetDocument& doc) {
  Json root;
  root["categories"] = Json::array();
  for (const ClassInfo& c : doc.classes.classes()) {
    root["categories"].push_back({{"id", c.source_id}, {"name", c.name}});
  }
  root["images"] = Json::array();
  for (const ImageRecord& rec : doc.images) {
    Json img{{"id", detail::image_id_json(rec)},
             {"width", rec.size.width},
             {"height", rec.size.height}};
    if (!rec.file_name.empty()) img["file_name"] = rec.file_name;
    root["images"].push_back(std::move(img));
  }
  root["annotations"] = Json::array();
  std::int64_t next_id = 1;
  for (std::size_t i = 0; i < doc.truths.size(); ++i) {
    for (const AnnotatedObject& obj : doc.truths[i].objects) {
      Json ann{{"id", next_id++},
               {"image_id", detail::image_id_json(doc.images[i])},
               {"category_id", doc.classes.at(obj.class_id).source_id},
               {"area", obj.area_px},
               {"iscrowd", 0}};
      if (is_box(obj.shape)) {
        ann["bbox"] = detail::box_to_coco_bbox(std::get<Box>(obj.shape));
      } else {
        const Polygon& poly = std::get<Polygon>(obj.shape);
        ann["segmentation"] = detail::polygon_to_coco_segmentation(poly);
        ann["bbox"] = detail::box_to_coco_bbox(bounding_box(poly));
      }
      root["annotations"].push_back(std::move(ann));
    }
  }
  return root.dump(2) + "\n";
}

}  // namespace lef
