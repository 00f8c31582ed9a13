#pragma once

#include <stdexcept>
#include <string>

namespace lef {

// Base class for every error thrown by the library. Parse errors carry the
// offending file path and location in the message.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& detail)
      : Error(path.empty() ? detail : path + ": " + detail) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& detail)
      : Error(path + ": " + detail) {}
};

}  // namespace lef
