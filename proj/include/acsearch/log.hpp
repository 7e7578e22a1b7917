#pragma once

#include <atomic>
#include <iostream>
#include <string_view>

namespace acs::log {

enum class Level { kDebug = 0, kInfo = 1, kWarning = 2, kQuiet = 3 };

inline std::atomic<Level>& threshold() {
  static std::atomic<Level> level{Level::kInfo};
  return level;
}

inline void write(Level level, std::string_view tag, std::string_view msg) {
  if (level < threshold().load()) return;
  std::clog << '[' << tag << "] " << msg << '\n';
}

inline void info(std::string_view msg) { write(Level::kInfo, "info", msg); }
inline void warn(std::string_view msg) { write(Level::kWarning, "warn", msg); }

}  // namespace acs::log
