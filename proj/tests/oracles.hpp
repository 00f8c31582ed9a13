#pragma once

// Independent reference implementations used to validate the library.
// Everything here recomputes results from first principles and must stay
// independent of the code paths under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lef/geometry.hpp"
#include "lef/types.hpp"

namespace oracle {

// Even-odd crossing test: count edges straddling the horizontal line through
// (px, py) whose intersection lies strictly right of px.
inline bool point_in_polygon(double px, double py, const lef::Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const lef::Vec2& a = v[i];
    const lef::Vec2& b = v[(i + 1) % n];
    if ((a.y > py) != (b.y > py)) {
      const double x_cross = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y);
      if (px < x_cross) inside = !inside;
    }
  }
  return inside;
}

// Per-pixel brute force over the whole image grid.
inline std::set<std::pair<int, int>> polygon_pixels(const lef::Polygon& poly,
                                                    lef::ImageSize size) {
  std::set<std::pair<int, int>> pixels;
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) {
      if (point_in_polygon(x + 0.5, y + 0.5, poly)) pixels.insert({x, y});
    }
  }
  return pixels;
}

// Segment proper/improper intersection test for the polygon simplicity check.
inline double cross(lef::Vec2 o, lef::Vec2 a, lef::Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline bool on_segment(lef::Vec2 p, lef::Vec2 a, lef::Vec2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

inline bool segments_intersect(lef::Vec2 p1, lef::Vec2 p2, lef::Vec2 q1, lef::Vec2 q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(p1, q1, q2)) return true;
  if (d2 == 0 && on_segment(p2, q1, q2)) return true;
  if (d3 == 0 && on_segment(q1, p1, p2)) return true;
  if (d4 == 0 && on_segment(q2, p1, p2)) return true;
  return false;
}

// A polygon is simple when no two non-adjacent edges intersect.
inline bool polygon_is_simple(const lef::Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;  // adjacent
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

// Exhaustive single-image average precision: for every prediction prefix the
// greedy assignment is recomputed from scratch, and the interpolated
// precision is taken as a direct maximum over the suffix instead of a
// running maximum.
struct ScoredShape {
  double score;
  lef::Shape shape;
};

inline std::size_t greedy_tp_count(const std::vector<const lef::Shape*>& preds,
                                   const std::vector<const lef::Shape*>& errors,
                                   double tau, lef::ImageSize size) {
  std::vector<bool> taken(errors.size(), false);
  std::size_t tp = 0;
  for (const lef::Shape* pred : preds) {
    double best = 0.0;
    std::optional<std::size_t> best_idx;
    for (std::size_t e = 0; e < errors.size(); ++e) {
      if (taken[e]) continue;
      const double iou = lef::shape_iou(*pred, *errors[e], size);
      if (iou > best) {
        best = iou;
        best_idx = e;
      }
    }
    if (best_idx && best >= tau) {
      taken[*best_idx] = true;
      ++tp;
    }
  }
  return tp;
}

inline double average_precision(const std::vector<ScoredShape>& preds,
                                const std::vector<lef::Shape>& errors,
                                const std::vector<double>& taus,
                                lef::ImageSize size) {
  if (errors.empty()) return -1.0;
  std::vector<std::size_t> order(preds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds[a].score > preds[b].score;
  });
  std::vector<const lef::Shape*> error_ptrs;
  for (const lef::Shape& s : errors) error_ptrs.push_back(&s);

  double ap_sum = 0.0;
  for (double tau : taus) {
    std::vector<double> precision, recall;
    for (std::size_t k = 1; k <= order.size(); ++k) {
      std::vector<const lef::Shape*> prefix;
      for (std::size_t i = 0; i < k; ++i) prefix.push_back(&preds[order[i]].shape);
      const std::size_t tp = greedy_tp_count(prefix, error_ptrs, tau, size);
      precision.push_back(static_cast<double>(tp) / static_cast<double>(k));
      recall.push_back(static_cast<double>(tp) / static_cast<double>(errors.size()));
    }
    double sampled_sum = 0.0;
    for (int j = 0; j <= 100; ++j) {
      const double r = j / 100.0;
      double best = 0.0;
      for (std::size_t k = 0; k < precision.size(); ++k) {
        if (recall[k] >= r) best = std::max(best, precision[k]);
      }
      sampled_sum += best;
    }
    ap_sum += sampled_sum / 101.0;
  }
  return 100.0 * ap_sum / static_cast<double>(taus.size());
}

// Upper critical values: chi2_inv(1 - p, dof).
inline constexpr double kChi2Dof2P1e4 = 18.420680743952367;   // -2 ln(1e-4)
inline constexpr double kChi2Dof17P1e3 = 40.790216700467529;  // p = 0.001, 17 dof

inline double chi_square_statistic(const std::vector<std::int64_t>& observed,
                                   const std::vector<double>& expected) {
  double x = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = static_cast<double>(observed[i]) - expected[i];
    x += d * d / expected[i];
  }
  return x;
}

}  // namespace oracle
