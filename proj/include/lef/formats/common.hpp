#pragma once

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lef/error.hpp"

namespace lef {
namespace detail {

// integers without a decimal point, everything else shortest round-trip
inline std::string format_number(double v) {
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_number(const std::string& text, const std::string& path,
                           const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, where + ": '" + text + "' is not a number");
  }
}

inline std::string path_stem(const std::string& name) {
  const std::size_t slash = name.find_last_of("/\\");
  const std::size_t start = slash == std::string::npos ? 0 : slash + 1;
  const std::size_t dot = name.find_last_of('.');
  if (dot == std::string::npos || dot <= start) return name.substr(start);
  return name.substr(start, dot - start);
}

}  // namespace detail
}  // namespace lef
