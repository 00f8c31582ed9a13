#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "lef/error.hpp"
#include "lef/geometry.hpp"
#include "lef/rng.hpp"
#include "lef/types.hpp"

namespace lef {

enum class SpawnShape { rectangle, polygon };

inline const char* to_string(SpawnShape s) {
  return s == SpawnShape::rectangle ? "rectangle" : "polygon";
}

inline SpawnShape spawn_shape_from_string(const std::string& s) {
  if (s == "rectangle") return SpawnShape::rectangle;
  if (s == "polygon") return SpawnShape::polygon;
  throw Error("unknown spawn shape '" + s + "'");
}

struct PerturbationConfig {
  double rate = 0.2;  // per-eligible-object error probability q
  int copies = 1;     // independently perturbed dataset copies t
  std::vector<ErrorType> error_types = {ErrorType::drop, ErrorType::flip,
                                        ErrorType::spawn};
  SpawnShape spawn_shape = SpawnShape::polygon;
  AreaBounds bounds;
  // star-polygon spawn parameters (polygon mode)
  int radius_min = 10;
  int radius_max = 80;
  double irregularity = 0.35;  // angular spacing variance
  double spikeness = 0.2;      // radial distance variance
  int max_vertices = 20;
  std::uint64_t seed = 0;

  bool type_enabled(ErrorType t) const {
    return std::find(error_types.begin(), error_types.end(), t) != error_types.end();
  }

  void validate(const ClassTable& classes) const {
    if (rate < 0.0 || rate > 1.0) throw ConfigError("perturbation rate must be in [0,1]");
    if (copies < 1) throw ConfigError("number of copies must be >= 1");
    if (error_types.empty()) throw ConfigError("at least one error type must be enabled");
    for (ErrorType t : error_types) {
      if (t == ErrorType::real) throw ConfigError("'real' is not a simulated error type");
      if (std::count(error_types.begin(), error_types.end(), t) != 1) {
        throw ConfigError("duplicate error type in configuration");
      }
    }
    if (type_enabled(ErrorType::flip) && classes.perturbable_count() < 2) {
      throw ConfigError("flip errors require at least two classes");
    }
    if (bounds.min_px && bounds.max_px && *bounds.min_px > *bounds.max_px) {
      throw ConfigError("minimum object size exceeds maximum");
    }
    if (type_enabled(ErrorType::spawn) && spawn_shape == SpawnShape::polygon) {
      if (radius_min < 1 || radius_min >= radius_max) {
        throw ConfigError("radius range requires 1 <= r1 < r2");
      }
      if (irregularity <= 0.0 || irregularity >= 1.0) {
        throw ConfigError("irregularity must be in (0,1)");
      }
      if (spikeness <= 0.0 || spikeness >= 1.0) {
        throw ConfigError("spikeness must be in (0,1)");
      }
      if (max_vertices < 4) throw ConfigError("polygons require at least 4 vertices");
    }
  }

  // spawn centers are sampled in [r, w-r] x [r, h-r]; the range must be non-empty
  void validate_image_size(ImageSize size, const std::string& image_id) const {
    if (!type_enabled(ErrorType::spawn) || spawn_shape != SpawnShape::polygon) return;
    if (2 * radius_max >= std::min(size.width, size.height)) {
      throw ConfigError("image '" + image_id + "' (" + std::to_string(size.width) +
                        "x" + std::to_string(size.height) +
                        ") too small for spawn radius range: 2*r2 must be below the "
                        "smaller image dimension");
    }
  }
};

// Size window check only; class- and object-level opt-outs are handled by
// is_perturbation_candidate.
inline bool eligible_for_perturbation(const AnnotatedObject& obj,
                                      const PerturbationConfig& cfg) {
  return cfg.bounds.admits(obj.area_px);
}

inline bool is_perturbation_candidate(const AnnotatedObject& obj,
                                      const ClassTable& classes,
                                      const PerturbationConfig& cfg) {
  return obj.perturbable && obj.class_id < classes.perturbable_count() &&
         eligible_for_perturbation(obj, cfg);
}

// New class drawn uniformly from the candidate classes minus the current one.
template <UniformRng R>
AnnotatedObject change_class(const AnnotatedObject& obj, const ClassTable& classes,
                             R& rng) {
  const int count = classes.perturbable_count();
  if (count < 2) throw Error("cannot flip class: only one class available");
  int picked = static_cast<int>(rng.uniform_int(0, count - 2));
  if (picked >= obj.class_id) ++picked;
  AnnotatedObject flipped = obj;
  flipped.class_id = picked;
  flipped.source_label.reset();
  return flipped;
}

// Axis-aligned spawn for object detection datasets: w_s ~ U[0,w],
// h_s ~ U[0,h], position uniform in the remaining room, so the box always
// lies inside the image. Zero-area draws are resampled.
template <UniformRng R>
AnnotatedObject generate_spawn_rectangle(int width, int height,
                                         const ClassTable& classes, R& rng) {
  if (width < 1 || height < 1) throw Error("image must be at least 1x1");
  constexpr int kMaxAttempts = 10;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double w_s = rng.uniform_real(0.0, width);
    const double h_s = rng.uniform_real(0.0, height);
    if (w_s * h_s < 1.0) continue;  // below one pixel
    const double x_s = rng.uniform_real(0.0, width - w_s);
    const double y_s = rng.uniform_real(0.0, height - h_s);
    const int class_id =
        static_cast<int>(rng.uniform_int(0, classes.perturbable_count() - 1));
    return make_object("", 0, Box{x_s, y_s, w_s, h_s}, class_id,
                       ImageSize{width, height});
  }
  throw Error("spawn rectangle sampling produced 10 degenerate boxes in a row; "
              "the random source looks broken");
}

// Angular steps between consecutive vertices: each ~ U[2pi/v - i', 2pi/v + i']
// with i' = irregularity * 2pi / v, then rescaled so the sum is exactly 2pi.
template <UniformRng R>
std::vector<double> sample_angular_steps(int vertex_count, double irregularity,
                                         R& rng) {
  const double base = 2.0 * std::numbers::pi / vertex_count;
  const double spread = irregularity * base;
  std::vector<double> steps(static_cast<std::size_t>(vertex_count));
  double sum = 0.0;
  for (double& step : steps) {
    step = rng.uniform_real(base - spread, base + spread);
    sum += step;
  }
  const double scale = sum / (2.0 * std::numbers::pi);
  for (double& step : steps) step /= scale;
  return steps;
}

// Star-shaped random polygon around a center: vertex angles accumulate the
// sampled steps from a uniform start angle; vertex radii ~ Normal(r, s*r)
// clipped to [0, 2r]. Vertices are clamped to the image rectangle.
template <UniformRng R>
Polygon generate_polygon(Vec2 center, double radius, double irregularity,
                         double spikeness, int vertex_count, ImageSize size,
                         R& rng) {
  if (vertex_count < 4) throw Error("polygons require at least 4 vertices");
  const std::vector<double> steps = sample_angular_steps(vertex_count, irregularity, rng);
  const double radial_sigma = spikeness * radius;
  double angle = rng.uniform_real(0.0, 2.0 * std::numbers::pi);
  Polygon poly;
  poly.vertices.reserve(static_cast<std::size_t>(vertex_count));
  for (int j = 0; j < vertex_count; ++j) {
    const double g = rng.normal(radius, radial_sigma);
    const double r = std::min(2.0 * radius, std::max(g, 0.0));
    poly.vertices.push_back(clamp_to_image(
        {center.x + r * std::cos(angle), center.y + r * std::sin(angle)}, size));
    angle += steps[static_cast<std::size_t>(j)];
  }
  return poly;
}

struct SpawnGeometry {
  Vec2 center;
  int radius = 0;
  int vertex_count = 0;
};

// Radius, center and vertex count for a polygon spawn, drawn on integer
// grids as in the rectangle case. Requires 2*r2 < min(w,h).
template <UniformRng R>
SpawnGeometry sample_spawn_geometry(int width, int height,
                                    const PerturbationConfig& cfg, R& rng) {
  SpawnGeometry geo;
  geo.radius = static_cast<int>(rng.uniform_int(cfg.radius_min, cfg.radius_max));
  if (geo.radius >= width - geo.radius || geo.radius >= height - geo.radius) {
    throw ConfigError("spawn center range is empty; validate the radius range "
                      "against the image size first");
  }
  geo.center.x = static_cast<double>(rng.uniform_int(geo.radius, width - geo.radius));
  geo.center.y = static_cast<double>(rng.uniform_int(geo.radius, height - geo.radius));
  geo.vertex_count = static_cast<int>(rng.uniform_int(4, cfg.max_vertices));
  return geo;
}

template <UniformRng R>
AnnotatedObject generate_spawn_polygon(int width, int height,
                                       const PerturbationConfig& cfg,
                                       const ClassTable& classes, R& rng) {
  const ImageSize size{width, height};
  const SpawnGeometry geo = sample_spawn_geometry(width, height, cfg, rng);
  Polygon poly = generate_polygon(geo.center, geo.radius, cfg.irregularity,
                                  cfg.spikeness, geo.vertex_count, size, rng);
  const int class_id =
      static_cast<int>(rng.uniform_int(0, classes.perturbable_count() - 1));
  return make_object("", 0, std::move(poly), class_id, size);
}

struct PerturbedImage {
  GroundTruth perturbed;
  std::vector<LabelErrorRecord> errors;
};

namespace detail {

// stable canonical order for the uniform type draw
inline std::vector<ErrorType> canonical_types(const PerturbationConfig& cfg) {
  std::vector<ErrorType> types = cfg.error_types;
  std::sort(types.begin(), types.end(),
            [](ErrorType a, ErrorType b) { return static_cast<int>(a) < static_cast<int>(b); });
  return types;
}

}  // namespace detail

// One pass of the perturbation algorithm over a single image. Each object
// draws from its own substream (derived from the object index), so results
// are independent of processing order. Ineligible objects pass through
// unchanged without consuming a draw.
template <UniformRng R = RngStream>
PerturbedImage perturb_image(const GroundTruth& original, const ClassTable& classes,
                             const PerturbationConfig& cfg, const R& image_rng) {
  const std::vector<ErrorType> types = detail::canonical_types(cfg);
  PerturbedImage out;
  out.perturbed.image_id = original.image_id;
  out.perturbed.size = original.size;

  std::int64_t next_spawn_id = 0;
  for (const AnnotatedObject& obj : original.objects) {
    next_spawn_id = std::max(next_spawn_id, obj.object_id + 1);
  }

  for (std::size_t i = 0; i < original.objects.size(); ++i) {
    const AnnotatedObject& obj = original.objects[i];
    if (!is_perturbation_candidate(obj, classes, cfg)) {
      out.perturbed.objects.push_back(obj);
      continue;
    }
    auto rng = image_rng.derive(static_cast<std::uint64_t>(i));
    if (rng.uniform_unit() >= cfg.rate) {
      out.perturbed.objects.push_back(obj);
      continue;
    }
    const ErrorType type = types[rng.uniform_index(types.size())];
    switch (type) {
      case ErrorType::drop:
        out.errors.push_back({obj, ErrorType::drop, std::nullopt});
        break;
      case ErrorType::flip: {
        AnnotatedObject flipped = change_class(obj, classes, rng);
        out.errors.push_back({flipped, ErrorType::flip, obj.class_id});
        out.perturbed.objects.push_back(std::move(flipped));
        break;
      }
      case ErrorType::spawn: {
        out.perturbed.objects.push_back(obj);
        AnnotatedObject spawn =
            cfg.spawn_shape == SpawnShape::rectangle
                ? generate_spawn_rectangle(original.size.width, original.size.height,
                                           classes, rng)
                : generate_spawn_polygon(original.size.width, original.size.height,
                                         cfg, classes, rng);
        spawn.image_id = original.image_id;
        spawn.object_id = next_spawn_id++;
        out.errors.push_back({spawn, ErrorType::spawn, std::nullopt});
        out.perturbed.objects.push_back(std::move(spawn));
        break;
      }
      case ErrorType::real:
        throw Error("'real' cannot be simulated");
    }
  }
  return out;
}

// Substream for one image of one dataset copy: path (seed, copy, image_id).
inline RngStream image_stream(std::uint64_t seed, int copy_index,
                              const std::string& image_id) {
  return RngStream(seed)
      .derive(static_cast<std::uint64_t>(copy_index))
      .derive(image_id);
}

template <UniformRng R = RngStream>
PerturbedImage perturb_image_copy(const GroundTruth& original,
                                  const ClassTable& classes,
                                  const PerturbationConfig& cfg, int copy_index) {
  return perturb_image(original, classes, cfg,
                       image_stream(cfg.seed, copy_index, original.image_id));
}

}  // namespace lef
