#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <unordered_set>
#include <vector>

#include "lef/error.hpp"
#include "lef/geometry.hpp"
#include "lef/rng.hpp"
#include "lef/types.hpp"

namespace lef {

enum class MaskStyle { semantic, instance, hsv_box, diff };

// 8-bit RGB raster, background exactly (0,0,0).
struct RasterMask {
  int width = 0;
  int height = 0;
  MaskStyle style = MaskStyle::semantic;
  std::vector<std::uint8_t> pixels;  // interleaved RGB, row-major

  RasterMask() = default;
  RasterMask(int w, int h, MaskStyle s)
      : width(w), height(h), style(s),
        pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0) {}

  Rgb at(int x, int y) const {
    const std::size_t i =
        (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
         static_cast<std::size_t>(x)) * 3;
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }

  void set(int x, int y, Rgb c) {
    const std::size_t i =
        (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
         static_cast<std::size_t>(x)) * 3;
    pixels[i] = c.r;
    pixels[i + 1] = c.g;
    pixels[i + 2] = c.b;
  }

  friend bool operator==(const RasterMask&, const RasterMask&) = default;
};

inline void paint_footprint(RasterMask& mask, const RasterFootprint& fp, Rgb color) {
  for (std::size_t row = 0; row < fp.rows.size(); ++row) {
    const int y = fp.y0 + static_cast<int>(row);
    for (const RowSpan& span : fp.rows[row]) {
      for (int x = span.begin; x < span.end; ++x) mask.set(x, y, color);
    }
  }
}

// Class-colored mask. Objects are drawn in list order, later objects
// overwrite earlier ones; uncovered pixels stay black.
inline RasterMask render_semantic(const GroundTruth& g, const ClassTable& classes) {
  RasterMask mask(g.size.width, g.size.height, MaskStyle::semantic);
  for (const AnnotatedObject& obj : g.objects) {
    if (!classes.contains(obj.class_id)) {
      throw Error("object " + std::to_string(obj.object_id) + " in image '" +
                  g.image_id + "' references unknown class id " +
                  std::to_string(obj.class_id));
    }
    paint_footprint(mask, rasterize_shape(obj.shape, g.size), classes.at(obj.class_id).color);
  }
  return mask;
}

// Per-object pseudo-random colors derived from (seed, object index);
// pairwise distinct and never black.
inline RasterMask render_instance(const GroundTruth& g, std::uint64_t seed) {
  if (g.objects.size() >= (1u << 24)) {
    throw Error("instance rendering supports at most 2^24-1 objects per image");
  }
  RasterMask mask(g.size.width, g.size.height, MaskStyle::instance);
  const RngStream root(seed);
  std::unordered_set<std::uint32_t> used;
  for (std::size_t i = 0; i < g.objects.size(); ++i) {
    auto rng = root.derive(i);
    Rgb color;
    do {
      const std::uint64_t bits = rng.next();
      color = {static_cast<std::uint8_t>(bits >> 16),
               static_cast<std::uint8_t>(bits >> 8),
               static_cast<std::uint8_t>(bits)};
    } while (color == Rgb{0, 0, 0} || !used.insert(rgb_key(color)).second);
    paint_footprint(mask, rasterize_shape(g.objects[i].shape, g.size), color);
  }
  return mask;
}

// h in degrees (any real), s and v in [0,1].
inline Rgb hsv_to_rgb(double h, double s, double v) {
  h = std::fmod(h, 360.0);
  if (h < 0.0) h += 360.0;
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0.0, g = 0.0, b = 0.0;
  if (hp < 1.0) {
    r = c; g = x;
  } else if (hp < 2.0) {
    r = x; g = c;
  } else if (hp < 3.0) {
    g = c; b = x;
  } else if (hp < 4.0) {
    g = x; b = c;
  } else if (hp < 5.0) {
    r = x; b = c;
  } else {
    r = c; b = x;
  }
  const double m = v - c;
  auto to_byte = [](double f) {
    return static_cast<std::uint8_t>(std::lround(255.0 * f));
  };
  return {to_byte(r + m), to_byte(g + m), to_byte(b + m)};
}

inline double class_hue(int class_id, int class_count) {
  return static_cast<double>(class_id) * 360.0 / class_count;
}

// Box mask for detection datasets. A pixel covered by k boxes gets
// hue = circular mean of the covering classes' hues (class_id * 360 / C),
// saturation 0.8^(k-1), value 1. For k <= 2 the color still identifies the
// covering class pair, so overlaps lose no information.
inline RasterMask render_boxes_hsv(const GroundTruth& g, const ClassTable& classes) {
  RasterMask mask(g.size.width, g.size.height, MaskStyle::hsv_box);
  const std::size_t count =
      static_cast<std::size_t>(g.size.width) * static_cast<std::size_t>(g.size.height);
  std::vector<double> sum_sin(count, 0.0), sum_cos(count, 0.0);
  std::vector<std::uint32_t> cover(count, 0);

  for (const AnnotatedObject& obj : g.objects) {
    if (!is_box(obj.shape)) {
      throw Error("object " + std::to_string(obj.object_id) + " in image '" +
                  g.image_id + "' is not a box; the HSV style renders boxes only");
    }
    if (!classes.contains(obj.class_id)) {
      throw Error("object " + std::to_string(obj.object_id) + " in image '" +
                  g.image_id + "' references unknown class id " +
                  std::to_string(obj.class_id));
    }
    const double hue_rad =
        class_hue(obj.class_id, classes.size()) * std::numbers::pi / 180.0;
    const double s = std::sin(hue_rad), c = std::cos(hue_rad);
    const RasterFootprint fp = rasterize_shape(obj.shape, g.size);
    for (std::size_t row = 0; row < fp.rows.size(); ++row) {
      const std::size_t base =
          static_cast<std::size_t>(fp.y0 + static_cast<int>(row)) *
          static_cast<std::size_t>(g.size.width);
      for (const RowSpan& span : fp.rows[row]) {
        for (int x = span.begin; x < span.end; ++x) {
          sum_sin[base + static_cast<std::size_t>(x)] += s;
          sum_cos[base + static_cast<std::size_t>(x)] += c;
          ++cover[base + static_cast<std::size_t>(x)];
        }
      }
    }
  }

  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t k = cover[i];
    if (k == 0) continue;
    const double hue =
        std::atan2(sum_sin[i] / k, sum_cos[i] / k) * 180.0 / std::numbers::pi;
    const double sat = std::pow(0.8, static_cast<double>(k - 1));
    const Rgb color = hsv_to_rgb(hue, sat, 1.0);
    const std::size_t p = i * 3;
    mask.pixels[p] = color.r;
    mask.pixels[p + 1] = color.g;
    mask.pixels[p + 2] = color.b;
  }
  return mask;
}

// Difference mask: where the ground-truth-style mask and the prediction
// mask disagree in any channel, the output takes the prediction's pixel;
// everywhere else it is black.
inline RasterMask diff_mask(const RasterMask& truth, const RasterMask& prediction) {
  if (truth.width != prediction.width || truth.height != prediction.height) {
    throw Error("difference mask requires equal dimensions, got " +
                std::to_string(truth.width) + "x" + std::to_string(truth.height) +
                " vs " + std::to_string(prediction.width) + "x" +
                std::to_string(prediction.height));
  }
  RasterMask out(truth.width, truth.height, MaskStyle::diff);
  for (std::size_t i = 0; i < out.pixels.size(); i += 3) {
    if (truth.pixels[i] != prediction.pixels[i] ||
        truth.pixels[i + 1] != prediction.pixels[i + 1] ||
        truth.pixels[i + 2] != prediction.pixels[i + 2]) {
      out.pixels[i] = prediction.pixels[i];
      out.pixels[i + 1] = prediction.pixels[i + 1];
      out.pixels[i + 2] = prediction.pixels[i + 2];
    }
  }
  return out;
}

}  // namespace lef
