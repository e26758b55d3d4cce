#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace condminer {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

namespace detail {

inline LogLevel parse_log_level(const char* s) {
    if (s == nullptr) return LogLevel::Warn;
    std::string v(s);
    for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "error") return LogLevel::Error;
    if (v == "warn" || v == "warning") return LogLevel::Warn;
    if (v == "info") return LogLevel::Info;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
}

}  // namespace detail

/// Log threshold, read once from COND_MINER_LOG (error|warn|info|debug).
inline LogLevel log_level() {
    static const LogLevel level = detail::parse_log_level(std::getenv("COND_MINER_LOG"));
    return level;
}

template <class... Args>
void log_at(LogLevel level, const char* tag, const Args&... args) {
    if (level > log_level()) return;
    std::ostringstream os;
    os << "cond-miner [" << tag << "] ";
    (os << ... << args);
    std::cerr << os.str() << '\n';
}

template <class... Args> void log_error(const Args&... args) { log_at(LogLevel::Error, "error", args...); }
template <class... Args> void log_warn(const Args&... args) { log_at(LogLevel::Warn, "warn", args...); }
template <class... Args> void log_info(const Args&... args) { log_at(LogLevel::Info, "info", args...); }
template <class... Args> void log_debug(const Args&... args) { log_at(LogLevel::Debug, "debug", args...); }

}  // namespace condminer
