#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lef/error.hpp"
#include "lef/raster.hpp"

namespace lef {

// Lower bound for per-channel standard deviations; constant channels would
// otherwise divide by zero during normalization.
inline constexpr double kSigmaFloor = 1e-6;

struct ChannelStats {
  std::array<double, 3> mean{0.0, 0.0, 0.0};
  std::array<double, 3> stddev{kSigmaFloor, kSigmaFloor, kSigmaFloor};
};

// Population mean and standard deviation per channel over all pixels,
// computed in double precision.
inline ChannelStats channel_stats(const RasterMask& image) {
  if (image.width < 1 || image.height < 1) {
    throw Error("channel statistics require at least one pixel");
  }
  ChannelStats stats;
  const std::size_t count =
      static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
  std::array<double, 3> sum{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < image.pixels.size(); i += 3) {
    sum[0] += image.pixels[i];
    sum[1] += image.pixels[i + 1];
    sum[2] += image.pixels[i + 2];
  }
  for (int c = 0; c < 3; ++c) stats.mean[static_cast<std::size_t>(c)] = sum[static_cast<std::size_t>(c)] / static_cast<double>(count);
  std::array<double, 3> sq{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < image.pixels.size(); i += 3) {
    for (std::size_t c = 0; c < 3; ++c) {
      const double d = image.pixels[i + c] - stats.mean[c];
      sq[c] += d * d;
    }
  }
  for (std::size_t c = 0; c < 3; ++c) {
    stats.stddev[c] = std::max(std::sqrt(sq[c] / static_cast<double>(count)), kSigmaFloor);
  }
  return stats;
}

// Which ground-truth mask occupies the second channel group: the perturbed
// mask during training on simulated errors, the original ground truth when
// hunting real errors.
enum class TruthChannel { pert, gt };

// Stacked detector input, C-contiguous (K, H, W), single precision.
struct InputTensor {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<float> values;
  std::vector<std::string> channel_names;
  ChannelStats rgb_stats;
  ChannelStats mask_stats;  // stats of the gt-or-pert mask, shared by pred/diff
  std::string image_id;
};

namespace detail {

inline void append_normalized(InputTensor& tensor, const RasterMask& image,
                              const ChannelStats& stats, const std::string& prefix) {
  static const char* suffix[3] = {"_r", "_g", "_b"};
  const std::size_t plane =
      static_cast<std::size_t>(tensor.height) * static_cast<std::size_t>(tensor.width);
  for (std::size_t c = 0; c < 3; ++c) {
    tensor.channel_names.push_back(prefix + suffix[c]);
    const double mu = stats.mean[c];
    const double sigma = stats.stddev[c];
    for (std::size_t i = 0; i < plane; ++i) {
      tensor.values.push_back(
          static_cast<float>((image.pixels[i * 3 + c] - mu) / sigma));
    }
  }
  tensor.channels += 3;
}

inline void require_same_size(const RasterMask& a, const RasterMask& b,
                              const char* name) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(std::string("input stack dimension mismatch: ") + name + " is " +
                std::to_string(b.width) + "x" + std::to_string(b.height) +
                ", expected " + std::to_string(a.width) + "x" +
                std::to_string(a.height));
  }
}

}  // namespace detail

// Stack rgb + ground-truth mask + prediction mask (+ optional difference
// mask) into a (9|12, H, W) tensor. The rgb channels are normalized with the
// rgb statistics; the mask, prediction and difference channels all use the
// ground-truth mask's statistics.
inline InputTensor stack_and_normalize(const RasterMask& rgb,
                                       const RasterMask& truth_mask,
                                       const RasterMask& prediction,
                                       const RasterMask* difference,
                                       TruthChannel truth_channel = TruthChannel::pert) {
  detail::require_same_size(rgb, truth_mask, "ground-truth mask");
  detail::require_same_size(rgb, prediction, "prediction mask");
  if (difference) detail::require_same_size(rgb, *difference, "difference mask");

  InputTensor tensor;
  tensor.height = rgb.height;
  tensor.width = rgb.width;
  tensor.rgb_stats = channel_stats(rgb);
  tensor.mask_stats = channel_stats(truth_mask);
  const int total = difference ? 12 : 9;
  tensor.values.reserve(static_cast<std::size_t>(total) *
                        static_cast<std::size_t>(rgb.width) *
                        static_cast<std::size_t>(rgb.height));

  detail::append_normalized(tensor, rgb, tensor.rgb_stats, "rgb");
  detail::append_normalized(tensor, truth_mask, tensor.mask_stats,
                            truth_channel == TruthChannel::pert ? "pert" : "gt");
  detail::append_normalized(tensor, prediction, tensor.mask_stats, "pred");
  if (difference) {
    detail::append_normalized(tensor, *difference, tensor.mask_stats, "diff");
  }
  return tensor;
}

}  // namespace lef
