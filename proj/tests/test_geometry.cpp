#include "lef/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "lef/rng.hpp"
#include "oracles.hpp"

using namespace lef;

namespace {

Polygon random_polygon(RngStream& rng, ImageSize size, int max_vertices = 12) {
  const int n = static_cast<int>(rng.uniform_int(3, max_vertices));
  Polygon poly;
  for (int i = 0; i < n; ++i) {
    // coordinates may leave the image so clipping is exercised too
    poly.vertices.push_back({rng.uniform_real(-5.0, size.width + 5.0),
                             rng.uniform_real(-5.0, size.height + 5.0)});
  }
  return poly;
}

}  // namespace

TEST(ShapeArea, BoxClosedForm) {
  EXPECT_DOUBLE_EQ(shape_area(Box{0, 0, 10, 10}, {100, 100}), 100.0);
  EXPECT_DOUBLE_EQ(shape_area(Box{3.5, 2.25, 4.0, 0.5}, {100, 100}), 2.0);
  EXPECT_DOUBLE_EQ(shape_area(Box{0, 0, 0, 10}, {100, 100}), 0.0);
}

TEST(ShapeArea, SquarePolygonMatchesBox) {
  const Polygon square{{{5, 5}, {15, 5}, {15, 15}, {5, 15}}};
  EXPECT_DOUBLE_EQ(shape_area(square, {100, 100}), 100.0);
}

TEST(ShapeArea, MatchesPointInPolygonBruteForce) {
  RngStream rng(2024);
  const ImageSize size{64, 64};
  for (int trial = 0; trial < 50; ++trial) {
    const Polygon poly = random_polygon(rng, size);
    const auto expected = oracle::polygon_pixels(poly, size);
    const RasterFootprint fp = rasterize_polygon(poly, size);
    ASSERT_EQ(fp.pixel_count, static_cast<std::int64_t>(expected.size()));
    EXPECT_DOUBLE_EQ(shape_area(poly, size), static_cast<double>(expected.size()));
    // footprint must be exactly the brute-force pixel set
    for (const auto& [x, y] : expected) {
      ASSERT_TRUE(fp.contains(x, y)) << "missing pixel " << x << "," << y;
    }
    std::int64_t covered = 0;
    for (int y = 0; y < size.height; ++y) {
      for (int x = 0; x < size.width; ++x) {
        covered += fp.contains(x, y) ? 1 : 0;
      }
    }
    ASSERT_EQ(covered, fp.pixel_count);
  }
}

TEST(ShapeIou, IdenticalBoxes) {
  const Shape a = Box{1, 2, 10, 20};
  EXPECT_DOUBLE_EQ(shape_iou(a, a, {64, 64}), 1.0);
}

TEST(ShapeIou, HalfOverlapBoxes) {
  // intersection 50, union 150
  EXPECT_DOUBLE_EQ(shape_iou(Box{0, 0, 10, 10}, Box{5, 0, 10, 10}, {64, 64}),
                   1.0 / 3.0);
}

TEST(ShapeIou, DisjointPolygons) {
  const Polygon a{{{0, 0}, {5, 0}, {5, 5}, {0, 5}}};
  const Polygon b{{{20, 20}, {30, 20}, {30, 30}, {20, 30}}};
  EXPECT_DOUBLE_EQ(shape_iou(a, b, {64, 64}), 0.0);
}

TEST(ShapeIou, SymmetricAndBounded) {
  RngStream rng(99);
  const ImageSize size{48, 48};
  for (int trial = 0; trial < 40; ++trial) {
    const Shape a = random_polygon(rng, size);
    const Shape b = random_polygon(rng, size);
    const double ab = shape_iou(a, b, size);
    const double ba = shape_iou(b, a, size);
    EXPECT_DOUBLE_EQ(ab, ba);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
  }
}

TEST(ShapeIou, SelfIouIsOneForNonEmptyFootprint) {
  RngStream rng(7);
  const ImageSize size{48, 48};
  for (int trial = 0; trial < 20; ++trial) {
    const Shape a = random_polygon(rng, size);
    if (rasterize_shape(a, size).pixel_count == 0) continue;
    EXPECT_DOUBLE_EQ(shape_iou(a, a, size), 1.0);
  }
}

TEST(ShapeIou, BoxClosedFormAgreesWithRasterWithinQuantization) {
  RngStream rng(555);
  const ImageSize size{128, 128};
  for (int trial = 0; trial < 60; ++trial) {
    const Box a{static_cast<double>(rng.uniform_int(0, 90)),
                static_cast<double>(rng.uniform_int(0, 90)),
                static_cast<double>(rng.uniform_int(1, 30)),
                static_cast<double>(rng.uniform_int(1, 30))};
    const Box b{static_cast<double>(rng.uniform_int(0, 90)),
                static_cast<double>(rng.uniform_int(0, 90)),
                static_cast<double>(rng.uniform_int(1, 30)),
                static_cast<double>(rng.uniform_int(1, 30))};
    const double closed = box_iou(a, b);
    // force the raster path by converting one side to a polygon
    const double raster = shape_iou(box_to_polygon(a), Shape{b}, size);
    const double tol = 1.0 / std::min(a.width * a.height, b.width * b.height);
    EXPECT_NEAR(closed, raster, tol);
  }
}

TEST(ShapeIou, MixedBoxPolygonUsesRaster) {
  // box and the identical square polygon must be a perfect match
  const Box b{4, 4, 8, 8};
  EXPECT_DOUBLE_EQ(shape_iou(Shape{b}, box_to_polygon(b), {32, 32}), 1.0);
}

TEST(Rasterize, DegenerateShapesAreEmpty) {
  EXPECT_EQ(rasterize_shape(Box{5, 5, 0, 7}, {32, 32}).pixel_count, 0);
  EXPECT_EQ(rasterize_polygon(Polygon{{{1, 1}, {2, 2}}}, {32, 32}).pixel_count, 0);
  // a polygon fully outside the image has an empty clipped footprint
  const Polygon outside{{{-20, -20}, {-10, -20}, {-10, -10}, {-20, -10}}};
  EXPECT_EQ(rasterize_polygon(outside, {32, 32}).pixel_count, 0);
}

TEST(Rasterize, OutOfBoundsPolygonIsClipped) {
  // 10x10 square hanging off the top-left corner: only the inside quarter counts
  const Polygon poly{{{-5, -5}, {5, -5}, {5, 5}, {-5, 5}}};
  EXPECT_EQ(rasterize_polygon(poly, {32, 32}).pixel_count, 25);
}

TEST(Rasterize, ExtremeCoordinatesStayDefined) {
  // ingested annotations may carry absurd coordinates; clipping must not
  // overflow the integer row/column math
  const Polygon huge{{{-1e12, -1e12}, {1e12, -1e12}, {1e12, 1e12}, {-1e12, 1e12}}};
  EXPECT_EQ(rasterize_polygon(huge, {16, 16}).pixel_count, 256);
  const Polygon far_away{{{1e15, 1e15}, {2e15, 1e15}, {2e15, 2e15}}};
  EXPECT_EQ(rasterize_polygon(far_away, {16, 16}).pixel_count, 0);
  const Polygon below{{{-1e15, -2e15}, {-2e15, -1e15}, {-1e15, -1e15}}};
  EXPECT_EQ(rasterize_polygon(below, {16, 16}).pixel_count, 0);
}

TEST(ShapeBounds, DetectsOutOfBounds) {
  EXPECT_TRUE(shape_in_bounds(Box{0, 0, 10, 10}, {10, 10}));
  EXPECT_FALSE(shape_in_bounds(Box{0, 0, 10.5, 10}, {10, 10}));
  EXPECT_FALSE(shape_in_bounds(Polygon{{{-1, 0}, {5, 0}, {5, 5}}}, {10, 10}));
}
