#include "bmoo/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace bmoo {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("BMOO_ECS_LOG");
    if (env == nullptr) return LogLevel::error;
    const std::string v(env);
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    return LogLevel::error;
  }();
  return level;
}

void log_message(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const char* tag = level == LogLevel::error   ? "error"
                    : level == LogLevel::info ? "info"
                                              : "debug";
  std::cerr << "[bmoo_ecs " << tag << "] " << message << "\n";
}

}  // namespace bmoo
