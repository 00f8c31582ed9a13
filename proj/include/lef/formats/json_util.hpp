#pragma once

#include <string>

#include <json.hpp>

#include "lef/error.hpp"

namespace lef {

using Json = nlohmann::json;

inline Json parse_json(const std::string& bytes, const std::string& path) {
  try {
    return Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw ParseError(path, std::string("invalid JSON: ") + e.what());
  }
}

inline const Json& require_field(const Json& node, const char* key,
                                 const std::string& path,
                                 const std::string& where) {
  const auto it = node.find(key);
  if (it == node.end()) {
    throw ParseError(path, where + ": missing mandatory field '" + key + "'");
  }
  return *it;
}

inline double require_number(const Json& node, const char* key,
                             const std::string& path, const std::string& where) {
  const Json& v = require_field(node, key, path, where);
  if (!v.is_number()) {
    throw ParseError(path, where + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

}  // namespace lef
