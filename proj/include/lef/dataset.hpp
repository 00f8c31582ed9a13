#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lef/error.hpp"
#include "lef/types.hpp"

namespace lef {

enum class DatasetFormat { coco, voc, cityscapes };

inline const char* to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::coco: return "coco";
    case DatasetFormat::voc: return "voc";
    case DatasetFormat::cityscapes: return "cityscapes";
  }
  return "?";
}

inline DatasetFormat dataset_format_from_string(const std::string& s) {
  if (s == "coco") return DatasetFormat::coco;
  if (s == "voc") return DatasetFormat::voc;
  if (s == "cityscapes") return DatasetFormat::cityscapes;
  throw Error("unknown dataset format '" + s + "'");
}

struct ImageRecord {
  std::string id;              // canonical string id used across the pipeline
  std::int64_t source_id = 0;  // numeric id carried by the source file (COCO)
  std::string file_name;
  ImageSize size;
};

// A parsed annotation source: class table plus per-image ground truth in
// file order.
struct DatasetDocument {
  DatasetFormat format = DatasetFormat::coco;
  ClassTable classes;
  std::vector<ImageRecord> images;
  std::vector<GroundTruth> truths;  // parallel to images
  std::string source_path;

  const GroundTruth* find(const std::string& image_id) const {
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].id == image_id) return &truths[i];
    }
    return nullptr;
  }

  void validate() const {
    if (images.size() != truths.size()) {
      throw Error("image and ground-truth lists are out of sync");
    }
    std::unordered_set<std::string> ids;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!ids.insert(images[i].id).second) {
        throw Error("duplicate image id '" + images[i].id + "'");
      }
      if (truths[i].image_id != images[i].id) {
        throw Error("ground truth for '" + truths[i].image_id +
                    "' stored under image '" + images[i].id + "'");
      }
      for (const AnnotatedObject& obj : truths[i].objects) {
        if (obj.image_id != images[i].id) {
          throw Error("object " + std::to_string(obj.object_id) +
                      " references image '" + obj.image_id + "' inside '" +
                      images[i].id + "'");
        }
        if (!classes.contains(obj.class_id)) {
          throw Error("object " + std::to_string(obj.object_id) + " in '" +
                      images[i].id + "' references unknown class " +
                      std::to_string(obj.class_id));
        }
      }
    }
  }
};

}  // namespace lef
