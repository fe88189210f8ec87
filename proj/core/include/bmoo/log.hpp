#pragma once

#include <string>

namespace bmoo {

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Level read once from BMOO_ECS_LOG (error|info|debug, default error).
LogLevel log_level();

void log_message(LogLevel level, const std::string& message);

inline void log_info(const std::string& m) { log_message(LogLevel::info, m); }
inline void log_debug(const std::string& m) { log_message(LogLevel::debug, m); }
inline void log_error(const std::string& m) { log_message(LogLevel::error, m); }

}  // namespace bmoo
