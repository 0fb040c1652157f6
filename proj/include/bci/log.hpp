#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

// Stderr logging gated by the BCI_LOG environment variable:
// "error" (default), "info", or "debug".

namespace bci::log {

enum class Level { error = 0, info = 1, debug = 2 };

inline Level threshold() {
    static const Level cached = [] {
        const char* env = std::getenv("BCI_LOG");
        if (env == nullptr) return Level::error;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        if (std::strcmp(env, "info") == 0) return Level::info;
        return Level::error;
    }();
    return cached;
}

inline void write(Level level, const std::string& message) {
    if (level > threshold()) return;
    const char* tag = level == Level::error ? "error" : level == Level::info ? "info" : "debug";
    std::fprintf(stderr, "[%s] %s\n", tag, message.c_str());
}

inline void error(const std::string& message) { write(Level::error, message); }
inline void info(const std::string& message) { write(Level::info, message); }
inline void debug(const std::string& message) { write(Level::debug, message); }

} // namespace bci::log
