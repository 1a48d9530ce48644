#pragma once

#include <string>

#include "json.hpp"

namespace waveguide::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

// Records below the level are dropped. The default is Off so that library
// users see nothing unless they opt in.
void set_level(Level level);
Level level();
Level parse_level(const std::string& name);

// One JSON object per line on stderr: {"level", "event", ...fields}.
void emit(Level level, const std::string& event, const nlohmann::ordered_json& fields = {});

inline void debug(const std::string& e, const nlohmann::ordered_json& f = {}) { emit(Level::Debug, e, f); }
inline void info(const std::string& e, const nlohmann::ordered_json& f = {}) { emit(Level::Info, e, f); }
inline void warn(const std::string& e, const nlohmann::ordered_json& f = {}) { emit(Level::Warn, e, f); }
inline void error(const std::string& e, const nlohmann::ordered_json& f = {}) { emit(Level::Error, e, f); }

}  // namespace waveguide::log
