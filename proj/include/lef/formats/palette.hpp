#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "lef/types.hpp"

namespace lef {

// Bit-interleaved colormap used by the Pascal VOC tooling; index 0 is black,
// so class palettes start at index 1.
inline Rgb voc_colormap(int index) {
  int r = 0, g = 0, b = 0, id = index;
  for (int j = 0; j < 8; ++j) {
    r |= ((id >> 0) & 1) << (7 - j);
    g |= ((id >> 1) & 1) << (7 - j);
    b |= ((id >> 2) & 1) << (7 - j);
    id >>= 3;
  }
  return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
          static_cast<std::uint8_t>(b)};
}

inline Rgb palette_color_for_class(int class_index) {
  return voc_colormap(class_index + 1);
}

// Nudge a color until it is non-black and unused; keeps builtin tables valid
// when source palettes collide (several Cityscapes void labels share a color).
inline Rgb ensure_unique_color(Rgb color, std::unordered_set<std::uint32_t>& used) {
  while (color == Rgb{0, 0, 0} || used.count(rgb_key(color)) > 0) {
    if (color.b < 255) {
      color.b = static_cast<std::uint8_t>(color.b + 1);
    } else if (color.g < 255) {
      color.b = 0;
      color.g = static_cast<std::uint8_t>(color.g + 1);
    } else {
      color.b = 0;
      color.g = 0;
      color.r = static_cast<std::uint8_t>(color.r + 1);
    }
  }
  used.insert(rgb_key(color));
  return color;
}

// Build a table from names alone, VOC-colormap palette.
inline ClassTable class_table_from_names(const std::vector<std::string>& names) {
  std::vector<ClassInfo> classes;
  for (std::size_t i = 0; i < names.size(); ++i) {
    classes.push_back({static_cast<int>(i), names[i],
                       palette_color_for_class(static_cast<int>(i)),
                       static_cast<std::int64_t>(i)});
  }
  return ClassTable(std::move(classes));
}

inline const std::vector<std::string>& voc_class_names() {
  static const std::vector<std::string> names = {
      "aeroplane", "bicycle", "bird",   "boat",        "bottle",
      "bus",       "car",     "cat",    "chair",       "cow",
      "diningtable", "dog",   "horse",  "motorbike",   "person",
      "pottedplant", "sheep", "sofa",   "train",       "tvmonitor"};
  return names;
}

inline ClassTable voc_class_table() { return class_table_from_names(voc_class_names()); }

namespace detail {

struct CityscapesLabel {
  const char* name;
  Rgb color;
  bool evaluation;  // one of the 19 classes incorporated into perturbation
};

// Official label set; evaluation classes first, in trainId order.
inline const std::vector<CityscapesLabel>& cityscapes_labels() {
  static const std::vector<CityscapesLabel> labels = {
      {"road", {128, 64, 128}, true},
      {"sidewalk", {244, 35, 232}, true},
      {"building", {70, 70, 70}, true},
      {"wall", {102, 102, 156}, true},
      {"fence", {190, 153, 153}, true},
      {"pole", {153, 153, 153}, true},
      {"traffic light", {250, 170, 30}, true},
      {"traffic sign", {220, 220, 0}, true},
      {"vegetation", {107, 142, 35}, true},
      {"terrain", {152, 251, 152}, true},
      {"sky", {70, 130, 180}, true},
      {"person", {220, 20, 60}, true},
      {"rider", {255, 0, 0}, true},
      {"car", {0, 0, 142}, true},
      {"truck", {0, 0, 70}, true},
      {"bus", {0, 60, 100}, true},
      {"train", {0, 80, 100}, true},
      {"motorcycle", {0, 0, 230}, true},
      {"bicycle", {119, 11, 32}, true},
      // void / ingest-only labels; colors collide in the official palette
      // and get nudged to keep the render palette injective
      {"unlabeled", {0, 0, 0}, false},
      {"ego vehicle", {0, 0, 0}, false},
      {"rectification border", {0, 0, 0}, false},
      {"out of roi", {0, 0, 0}, false},
      {"static", {0, 0, 0}, false},
      {"dynamic", {111, 74, 0}, false},
      {"ground", {81, 0, 81}, false},
      {"parking", {250, 170, 160}, false},
      {"rail track", {230, 150, 140}, false},
      {"guard rail", {180, 165, 180}, false},
      {"bridge", {150, 100, 100}, false},
      {"tunnel", {150, 120, 90}, false},
      {"caravan", {0, 0, 90}, false},
      {"trailer", {0, 0, 110}, false},
      {"license plate", {0, 0, 142}, false},
  };
  return labels;
}

}  // namespace detail

// 19 evaluation classes (perturbable) followed by the void labels, which are
// ingested and rendered but never perturbed.
inline ClassTable cityscapes_class_table() {
  std::vector<ClassInfo> classes;
  std::unordered_set<std::uint32_t> used;
  int perturbable = 0;
  for (const auto& label : detail::cityscapes_labels()) {
    if (label.evaluation) ++perturbable;
    classes.push_back({static_cast<int>(classes.size()), label.name,
                       ensure_unique_color(label.color, used),
                       static_cast<std::int64_t>(classes.size())});
  }
  return ClassTable(std::move(classes), perturbable);
}

}  // namespace lef
