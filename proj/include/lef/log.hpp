#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

namespace lef {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

// Verbosity is controlled by the LEF_LOG environment variable
// (debug|info|warn|error|off). Default: warn.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("LEF_LOG");
    if (!env) return LogLevel::warn;
    const std::string v(env);
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    if (v == "warn") return LogLevel::warn;
    if (v == "error") return LogLevel::error;
    if (v == "off" || v == "none") return LogLevel::off;
    return LogLevel::warn;
  }();
  return level;
}

inline void log_message(LogLevel level, const std::string& msg) {
  if (level < log_level()) return;
  static std::mutex mu;
  static const char* names[] = {"debug", "info", "warn", "error"};
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[lef:" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

inline void log_debug(const std::string& msg) { log_message(LogLevel::debug, msg); }
inline void log_info(const std::string& msg) { log_message(LogLevel::info, msg); }
inline void log_warn(const std::string& msg) { log_message(LogLevel::warn, msg); }
inline void log_error(const std::string& msg) { log_message(LogLevel::error, msg); }

}  // namespace lef
