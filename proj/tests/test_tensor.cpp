#include "lef/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "lef/rng.hpp"

using namespace lef;

namespace {

RasterMask constant_mask(int w, int h, Rgb c) {
  RasterMask m(w, h, MaskStyle::semantic);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) m.set(x, y, c);
  }
  return m;
}

RasterMask random_mask(int w, int h, std::uint64_t seed) {
  RngStream rng(seed);
  RasterMask m(w, h, MaskStyle::semantic);
  for (auto& p : m.pixels) p = static_cast<std::uint8_t>(rng.uniform_int(0, 255));
  return m;
}

}  // namespace

TEST(ChannelStats, ConstantChannelHitsSigmaFloor) {
  const ChannelStats stats = channel_stats(constant_mask(8, 8, {128, 128, 128}));
  for (int c = 0; c < 3; ++c) {
    EXPECT_DOUBLE_EQ(stats.mean[c], 128.0);
    EXPECT_DOUBLE_EQ(stats.stddev[c], kSigmaFloor);
  }
}

TEST(ChannelStats, TwoPixelClosedForm) {
  RasterMask m(2, 1, MaskStyle::semantic);
  m.set(0, 0, {0, 10, 100});
  m.set(1, 0, {255, 10, 200});
  const ChannelStats stats = channel_stats(m);
  EXPECT_DOUBLE_EQ(stats.mean[0], 127.5);
  EXPECT_DOUBLE_EQ(stats.stddev[0], 127.5);
  EXPECT_DOUBLE_EQ(stats.mean[1], 10.0);
  EXPECT_DOUBLE_EQ(stats.stddev[1], kSigmaFloor);
  EXPECT_DOUBLE_EQ(stats.mean[2], 150.0);
  EXPECT_DOUBLE_EQ(stats.stddev[2], 50.0);
}

TEST(ChannelStats, MatchesIndependentSummation) {
  const RasterMask m = random_mask(37, 23, 5);
  const ChannelStats stats = channel_stats(m);
  for (std::size_t c = 0; c < 3; ++c) {
    double sum = 0.0;
    const std::size_t n = static_cast<std::size_t>(m.width) * m.height;
    for (std::size_t i = 0; i < n; ++i) sum += m.pixels[i * 3 + c];
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sq += (m.pixels[i * 3 + c] - mean) * (m.pixels[i * 3 + c] - mean);
    }
    const double sd = std::sqrt(sq / static_cast<double>(n));
    EXPECT_NEAR(stats.mean[c], mean, 1e-6 * std::max(1.0, std::fabs(mean)));
    EXPECT_NEAR(stats.stddev[c], sd, 1e-6 * std::max(1.0, sd));
  }
}

TEST(StackNormalize, TwelveChannelLayoutAndNames) {
  const RasterMask rgb = random_mask(16, 8, 1);
  const RasterMask pert = random_mask(16, 8, 2);
  const RasterMask pred = random_mask(16, 8, 3);
  const RasterMask diff = random_mask(16, 8, 4);
  const InputTensor t = stack_and_normalize(rgb, pert, pred, &diff);
  EXPECT_EQ(t.channels, 12);
  EXPECT_EQ(t.values.size(), 12u * 16u * 8u);
  const std::vector<std::string> expected = {
      "rgb_r", "rgb_g", "rgb_b", "pert_r", "pert_g", "pert_b",
      "pred_r", "pred_g", "pred_b", "diff_r", "diff_g", "diff_b"};
  EXPECT_EQ(t.channel_names, expected);
}

TEST(StackNormalize, NineChannelsWithoutDiff) {
  const RasterMask rgb = random_mask(8, 8, 1);
  const InputTensor t = stack_and_normalize(rgb, rgb, rgb, nullptr);
  EXPECT_EQ(t.channels, 9);
  EXPECT_EQ(t.values.size(), 9u * 8u * 8u);
  EXPECT_EQ(t.channel_names.size(), 9u);
}

TEST(StackNormalize, RealModeLabelsSecondGroupGt) {
  const RasterMask rgb = random_mask(8, 8, 1);
  const InputTensor t =
      stack_and_normalize(rgb, rgb, rgb, nullptr, TruthChannel::gt);
  EXPECT_EQ(t.channel_names[3], "gt_r");
  EXPECT_EQ(t.channel_names[4], "gt_g");
  EXPECT_EQ(t.channel_names[5], "gt_b");
}

TEST(StackNormalize, EqualPredAndBlackDiffCollapse) {
  const RasterMask rgb = random_mask(12, 10, 7);
  const RasterMask pert = random_mask(12, 10, 8);
  const RasterMask pred = pert;  // identical prediction
  const RasterMask diff(12, 10, MaskStyle::diff);  // all black
  const InputTensor t = stack_and_normalize(rgb, pert, pred, &diff);
  const std::size_t plane = 12 * 10;
  for (std::size_t i = 0; i < 3 * plane; ++i) {
    ASSERT_EQ(t.values[3 * plane + i], t.values[6 * plane + i]);
  }
  // diff channels are the constant (0 - mu)/sigma
  for (std::size_t c = 0; c < 3; ++c) {
    const float expected =
        static_cast<float>((0.0 - t.mask_stats.mean[c]) / t.mask_stats.stddev[c]);
    for (std::size_t i = 0; i < plane; ++i) {
      ASSERT_EQ(t.values[(9 + c) * plane + i], expected);
    }
  }
}

TEST(StackNormalize, NormalizedChannelsHaveZeroMeanUnitStd) {
  const RasterMask rgb = random_mask(64, 48, 21);
  const InputTensor t = stack_and_normalize(rgb, random_mask(64, 48, 22),
                                            random_mask(64, 48, 23), nullptr);
  const std::size_t plane = 64 * 48;
  for (std::size_t c = 0; c < 3; ++c) {  // rgb group, normalized by its own stats
    double sum = 0.0;
    for (std::size_t i = 0; i < plane; ++i) sum += t.values[c * plane + i];
    const double mean = sum / static_cast<double>(plane);
    double sq = 0.0;
    for (std::size_t i = 0; i < plane; ++i) {
      sq += (t.values[c * plane + i] - mean) * (t.values[c * plane + i] - mean);
    }
    const double sd = std::sqrt(sq / static_cast<double>(plane));
    EXPECT_LT(std::fabs(mean), 1e-5);
    EXPECT_LT(std::fabs(sd - 1.0), 1e-5);
  }
}

TEST(StackNormalize, PredAndDiffUseMaskStatsNotTheirOwn) {
  // prediction mask with radically different statistics from the gt mask;
  // guards the deliberate asymmetry of the normalization
  const RasterMask rgb = random_mask(16, 16, 31);
  const RasterMask pert = constant_mask(16, 16, {10, 10, 10});
  const RasterMask pred = constant_mask(16, 16, {250, 250, 250});
  const InputTensor t = stack_and_normalize(rgb, pert, pred, nullptr);
  const std::size_t plane = 16 * 16;
  // pert stats: mean 10, sigma floor; pred channel = (250-10)/1e-6
  const float expected = static_cast<float>((250.0 - 10.0) / kSigmaFloor);
  for (std::size_t i = 0; i < plane; ++i) {
    ASSERT_EQ(t.values[6 * plane + i], expected);
  }
}

TEST(StackNormalize, RoundTripInvertible) {
  const RasterMask rgb = random_mask(24, 24, 41);
  const RasterMask pert = random_mask(24, 24, 42);
  const RasterMask pred = random_mask(24, 24, 43);
  const InputTensor t = stack_and_normalize(rgb, pert, pred, nullptr);
  const std::size_t plane = 24 * 24;
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < plane; ++i) {
      const double back =
          t.values[c * plane + i] * t.rgb_stats.stddev[c] + t.rgb_stats.mean[c];
      ASSERT_NEAR(back, rgb.pixels[i * 3 + c], 1e-4);
    }
  }
}

TEST(StackNormalize, DimensionMismatchIsAnError) {
  const RasterMask rgb = random_mask(8, 8, 1);
  const RasterMask wrong = random_mask(8, 9, 2);
  EXPECT_THROW(stack_and_normalize(rgb, wrong, rgb, nullptr), Error);
  EXPECT_THROW(stack_and_normalize(rgb, rgb, wrong, nullptr), Error);
  EXPECT_THROW(stack_and_normalize(rgb, rgb, rgb, &wrong), Error);
}
