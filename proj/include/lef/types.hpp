#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "lef/error.hpp"
#include "lef/geometry.hpp"

namespace lef {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline std::uint32_t rgb_key(Rgb c) {
  return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b;
}

struct ClassInfo {
  int id = 0;
  std::string name;
  Rgb color;
  // id carried by the source file (COCO category id); defaults to id
  std::int64_t source_id = 0;
};

// Ordered class set with render palette. Classes [0, perturbable_count) are
// candidates for flips and spawn class assignment; any classes after that
// are ingest-only (e.g. Cityscapes void labels kept for faithful rendering).
class ClassTable {
 public:
  ClassTable() = default;

  explicit ClassTable(std::vector<ClassInfo> classes, int perturbable_count = -1)
      : classes_(std::move(classes)),
        perturbable_count_(perturbable_count < 0
                               ? static_cast<int>(classes_.size())
                               : perturbable_count) {
    validate();
  }

  int size() const { return static_cast<int>(classes_.size()); }
  int perturbable_count() const { return perturbable_count_; }
  const ClassInfo& at(int id) const {
    if (id < 0 || id >= size()) {
      throw Error("class id " + std::to_string(id) + " out of range (C=" +
                  std::to_string(size()) + ")");
    }
    return classes_[static_cast<std::size_t>(id)];
  }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  bool contains(int id) const { return id >= 0 && id < size(); }

  std::optional<int> find_by_name(const std::string& name) const {
    for (const ClassInfo& c : classes_) {
      if (c.name == name) return c.id;
    }
    return std::nullopt;
  }

  std::optional<int> find_by_source_id(std::int64_t source_id) const {
    for (const ClassInfo& c : classes_) {
      if (c.source_id == source_id) return c.id;
    }
    return std::nullopt;
  }

 private:
  void validate() const {
    if (classes_.empty()) throw Error("class table must contain at least one class");
    if (perturbable_count_ < 1 || perturbable_count_ > size()) {
      throw Error("perturbable class count out of range");
    }
    std::unordered_set<std::uint32_t> colors;
    for (int i = 0; i < size(); ++i) {
      const ClassInfo& c = classes_[static_cast<std::size_t>(i)];
      if (c.id != i) throw Error("class ids must be contiguous from 0");
      if (c.color == Rgb{0, 0, 0}) {
        throw Error("class '" + c.name + "' uses (0,0,0); black is reserved for background");
      }
      if (!colors.insert(rgb_key(c.color)).second) {
        throw Error("duplicate palette color for class '" + c.name + "'");
      }
    }
  }

  std::vector<ClassInfo> classes_;
  int perturbable_count_ = 0;
};

struct AnnotatedObject {
  std::string image_id;
  std::int64_t object_id = 0;
  Shape shape;
  int class_id = 0;
  double area_px = 0.0;
  // per-object opt-out from perturbation (Cityscapes group labels, void classes)
  bool perturbable = true;
  // geometry extends past the image rectangle (ingested files only)
  bool out_of_bounds = false;
  // original label text when it is not the class name (e.g. "cargroup")
  std::optional<std::string> source_label;

  friend bool operator==(const AnnotatedObject&, const AnnotatedObject&) = default;
};

inline AnnotatedObject make_object(std::string image_id, std::int64_t object_id,
                                   Shape shape, int class_id, ImageSize size) {
  AnnotatedObject obj;
  obj.image_id = std::move(image_id);
  obj.object_id = object_id;
  obj.area_px = shape_area(shape, size);
  obj.out_of_bounds = !shape_in_bounds(shape, size);
  obj.shape = std::move(shape);
  obj.class_id = class_id;
  return obj;
}

struct GroundTruth {
  std::string image_id;
  ImageSize size;
  // file order preserved; render z-order follows it (later objects overwrite)
  std::vector<AnnotatedObject> objects;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

enum class ErrorType { drop, flip, spawn, real };

inline const char* to_string(ErrorType t) {
  switch (t) {
    case ErrorType::drop: return "drop";
    case ErrorType::flip: return "flip";
    case ErrorType::spawn: return "spawn";
    case ErrorType::real: return "real";
  }
  return "?";
}

inline ErrorType error_type_from_string(const std::string& s) {
  if (s == "drop") return ErrorType::drop;
  if (s == "flip") return ErrorType::flip;
  if (s == "spawn") return ErrorType::spawn;
  if (s == "real") return ErrorType::real;
  throw Error("unknown error type '" + s + "'");
}

struct LabelErrorRecord {
  AnnotatedObject object;
  ErrorType error_type = ErrorType::real;
  std::optional<int> original_class_id;  // set for flips

  friend bool operator==(const LabelErrorRecord&, const LabelErrorRecord&) = default;
};

struct Prediction {
  AnnotatedObject object;
  double score = 0.0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// Optional object-size window for perturbation eligibility. An absent bound
// means unbounded on that side.
struct AreaBounds {
  std::optional<double> min_px;
  std::optional<double> max_px;

  bool admits(double area) const {
    if (min_px && area < *min_px) return false;
    if (max_px && area > *max_px) return false;
    return true;
  }
};

}  // namespace lef
