#pragma once

#include <bit>
#include <cstring>
#include <string>
#include <vector>

#include "lef/formats/image_io.hpp"
#include "lef/formats/json_util.hpp"
#include "lef/tensor.hpp"

namespace lef {

static_assert(std::endian::native == std::endian::little,
              "tensor files are little-endian; big-endian hosts need byte swaps");

// Raw little-endian float32 payload, C-contiguous (K, H, W), with a JSON
// sidecar at <path>.json describing shape, channel names and the applied
// normalization.
inline void write_tensor(const InputTensor& tensor, const std::string& path) {
  std::string payload(tensor.values.size() * sizeof(float), '\0');
  std::memcpy(payload.data(), tensor.values.data(), payload.size());
  write_file_bytes(path, payload);

  Json sidecar;
  sidecar["shape"] = Json::array({tensor.channels, tensor.height, tensor.width});
  sidecar["channel_names"] = tensor.channel_names;
  Json mu = Json::array(), sigma = Json::array();
  for (int c = 0; c < tensor.channels; ++c) {
    const ChannelStats& stats = c < 3 ? tensor.rgb_stats : tensor.mask_stats;
    mu.push_back(stats.mean[static_cast<std::size_t>(c % 3)]);
    sigma.push_back(stats.stddev[static_cast<std::size_t>(c % 3)]);
  }
  sidecar["mu"] = std::move(mu);
  sidecar["sigma"] = std::move(sigma);
  sidecar["image_id"] = tensor.image_id;
  write_file_bytes(path + ".json", sidecar.dump(2) + "\n");
}

inline InputTensor read_tensor(const std::string& path) {
  const std::string payload = read_file_bytes(path);
  const Json sidecar = parse_json(read_file_bytes(path + ".json"), path + ".json");
  InputTensor tensor;
  tensor.channels = sidecar["shape"][0].get<int>();
  tensor.height = sidecar["shape"][1].get<int>();
  tensor.width = sidecar["shape"][2].get<int>();
  tensor.channel_names = sidecar["channel_names"].get<std::vector<std::string>>();
  tensor.image_id = sidecar.value("image_id", "");
  const std::size_t count = static_cast<std::size_t>(tensor.channels) *
                            static_cast<std::size_t>(tensor.height) *
                            static_cast<std::size_t>(tensor.width);
  if (payload.size() != count * sizeof(float)) {
    throw IoError(path, "payload size " + std::to_string(payload.size()) +
                            " does not match shape");
  }
  tensor.values.resize(count);
  std::memcpy(tensor.values.data(), payload.data(), payload.size());
  for (std::size_t c = 0; c < 3 && c < sidecar["mu"].size(); ++c) {
    tensor.rgb_stats.mean[c] = sidecar["mu"][c].get<double>();
    tensor.rgb_stats.stddev[c] = sidecar["sigma"][c].get<double>();
  }
  for (std::size_t c = 3; c < 6 && c < sidecar["mu"].size(); ++c) {
    tensor.mask_stats.mean[c - 3] = sidecar["mu"][c].get<double>();
    tensor.mask_stats.stddev[c - 3] = sidecar["sigma"][c].get<double>();
  }
  return tensor;
}

}  // namespace lef
