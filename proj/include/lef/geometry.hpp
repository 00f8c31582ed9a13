#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace lef {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct ImageSize {
  int width = 0;
  int height = 0;
  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

// Axis-aligned box, (x, y) = top-left corner, real pixel coordinates.
struct Box {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
  friend bool operator==(const Box&, const Box&) = default;
};

struct Polygon {
  std::vector<Vec2> vertices;
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

using Shape = std::variant<Box, Polygon>;

inline bool is_box(const Shape& s) { return std::holds_alternative<Box>(s); }

inline Polygon box_to_polygon(const Box& b) {
  return Polygon{{{b.x, b.y},
                  {b.x + b.width, b.y},
                  {b.x + b.width, b.y + b.height},
                  {b.x, b.y + b.height}}};
}

inline Box bounding_box(const Polygon& p) {
  if (p.vertices.empty()) return Box{};
  double x0 = p.vertices[0].x, x1 = x0, y0 = p.vertices[0].y, y1 = y0;
  for (const Vec2& v : p.vertices) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  return Box{x0, y0, x1 - x0, y1 - y0};
}

inline bool shape_in_bounds(const Shape& s, ImageSize size) {
  const Box b = is_box(s) ? std::get<Box>(s) : bounding_box(std::get<Polygon>(s));
  return b.x >= 0.0 && b.y >= 0.0 && b.x + b.width <= size.width &&
         b.y + b.height <= size.height;
}

// Half-open column interval [begin, end) on one raster row.
struct RowSpan {
  int begin = 0;
  int end = 0;
};

// Pixel footprint of a shape on the image grid, clipped to the image
// rectangle. A pixel (x, y) belongs to the footprint when its center
// (x + 0.5, y + 0.5) lies inside the shape under the even-odd rule. Rows
// are stored as sorted disjoint spans; row y0 + i lives at rows[i].
struct RasterFootprint {
  int y0 = 0;
  std::vector<std::vector<RowSpan>> rows;
  std::int64_t pixel_count = 0;

  bool contains(int x, int y) const {
    if (y < y0 || y >= y0 + static_cast<int>(rows.size())) return false;
    for (const RowSpan& s : rows[static_cast<std::size_t>(y - y0)]) {
      if (x >= s.begin && x < s.end) return true;
    }
    return false;
  }
};

namespace detail {

// First index in [0, limit] whose pixel center x + 0.5 is >= v; clamps in the
// double domain so arbitrarily large ingested coordinates stay well-defined.
inline int first_center_at_or_after(double v, int limit) {
  const double d = std::ceil(v - 0.5);
  if (d <= 0.0) return 0;
  if (d >= static_cast<double>(limit)) return limit;
  return static_cast<int>(d);
}

}  // namespace detail

// Even-odd scanline fill at pixel centers. This is the single rasterization
// used for areas, IoU and mask rendering, so all three agree exactly.
inline RasterFootprint rasterize_polygon(const Polygon& poly, ImageSize size) {
  RasterFootprint fp;
  const std::size_t n = poly.vertices.size();
  if (n < 3 || size.width <= 0 || size.height <= 0) return fp;

  double min_y = poly.vertices[0].y, max_y = min_y;
  for (const Vec2& v : poly.vertices) {
    min_y = std::min(min_y, v.y);
    max_y = std::max(max_y, v.y);
  }
  // rows whose center y + 0.5 falls in [min_y, max_y]
  const double hi_d = std::floor(max_y - 0.5);
  if (hi_d < 0.0 || min_y - 0.5 > static_cast<double>(size.height)) return fp;
  const int row_lo = detail::first_center_at_or_after(min_y, size.height);
  const int row_hi = hi_d >= static_cast<double>(size.height - 1)
                         ? size.height - 1
                         : static_cast<int>(hi_d);
  if (row_lo > row_hi) return fp;

  fp.y0 = row_lo;
  fp.rows.resize(static_cast<std::size_t>(row_hi - row_lo + 1));

  std::vector<double> crossings;
  for (int y = row_lo; y <= row_hi; ++y) {
    const double py = y + 0.5;
    crossings.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = poly.vertices[i];
      const Vec2& b = poly.vertices[(i + 1) % n];
      if ((a.y > py) != (b.y > py)) {
        crossings.push_back(a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    auto& spans = fp.rows[static_cast<std::size_t>(y - row_lo)];
    for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
      // fill pixels whose center x + 0.5 lies in [crossings[i], crossings[i+1])
      const int begin = detail::first_center_at_or_after(crossings[i], size.width);
      const int end = detail::first_center_at_or_after(crossings[i + 1], size.width);
      if (begin < end) {
        // crossings are sorted, so spans arrive left to right; merge touching
        if (!spans.empty() && spans.back().end >= begin) {
          spans.back().end = std::max(spans.back().end, end);
        } else {
          spans.push_back({begin, end});
        }
      }
    }
    for (const RowSpan& s : spans) fp.pixel_count += s.end - s.begin;
  }
  return fp;
}

inline RasterFootprint rasterize_shape(const Shape& s, ImageSize size) {
  if (is_box(s)) return rasterize_polygon(box_to_polygon(std::get<Box>(s)), size);
  return rasterize_polygon(std::get<Polygon>(s), size);
}

inline std::int64_t footprint_intersection(const RasterFootprint& a,
                                           const RasterFootprint& b) {
  std::int64_t total = 0;
  const int lo = std::max(a.y0, b.y0);
  const int hi = std::min(a.y0 + static_cast<int>(a.rows.size()),
                          b.y0 + static_cast<int>(b.rows.size()));
  for (int y = lo; y < hi; ++y) {
    const auto& ra = a.rows[static_cast<std::size_t>(y - a.y0)];
    const auto& rb = b.rows[static_cast<std::size_t>(y - b.y0)];
    std::size_t i = 0, j = 0;
    while (i < ra.size() && j < rb.size()) {
      const int begin = std::max(ra[i].begin, rb[j].begin);
      const int end = std::min(ra[i].end, rb[j].end);
      if (begin < end) total += end - begin;
      if (ra[i].end < rb[j].end) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  return total;
}

// Pixel area of a shape. Boxes use the closed form; polygons count raster
// pixels, matching the renderer exactly.
inline double shape_area(const Shape& s, ImageSize size) {
  if (is_box(s)) {
    const Box& b = std::get<Box>(s);
    if (b.width <= 0.0 || b.height <= 0.0) return 0.0;
    return b.width * b.height;
  }
  return static_cast<double>(rasterize_polygon(std::get<Polygon>(s), size).pixel_count);
}

inline double box_iou(const Box& a, const Box& b) {
  const double ix = std::min(a.x + a.width, b.x + b.width) - std::max(a.x, b.x);
  const double iy = std::min(a.y + a.height, b.y + b.height) - std::max(a.y, b.y);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.width * a.height + b.width * b.height - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

// Box/box pairs use the closed form; any pair involving a polygon is
// compared on raster masks.
inline double shape_iou(const Shape& a, const Shape& b, ImageSize size) {
  if (is_box(a) && is_box(b)) return box_iou(std::get<Box>(a), std::get<Box>(b));
  const RasterFootprint fa = rasterize_shape(a, size);
  const RasterFootprint fb = rasterize_shape(b, size);
  const std::int64_t inter = footprint_intersection(fa, fb);
  const std::int64_t uni = fa.pixel_count + fb.pixel_count - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline double shape_iou(const Shape& a, const RasterFootprint& fa, const Shape& b,
                        const RasterFootprint& fb) {
  if (is_box(a) && is_box(b)) return box_iou(std::get<Box>(a), std::get<Box>(b));
  const std::int64_t inter = footprint_intersection(fa, fb);
  const std::int64_t uni = fa.pixel_count + fb.pixel_count - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline Vec2 clamp_to_image(Vec2 v, ImageSize size) {
  return {std::clamp(v.x, 0.0, static_cast<double>(size.width)),
          std::clamp(v.y, 0.0, static_cast<double>(size.height))};
}

}  // namespace lef
