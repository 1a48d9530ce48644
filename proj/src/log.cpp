#include "waveguide/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>

#include "waveguide/errors.hpp"

namespace waveguide::log {

namespace {

std::atomic<Level> g_level{Level::Off};
std::mutex g_mu;

const char* name(Level l) {
  switch (l) {
    case Level::Debug:
      return "debug";
    case Level::Info:
      return "info";
    case Level::Warn:
      return "warn";
    case Level::Error:
      return "error";
    case Level::Off:
      return "off";
  }
  return "?";
}

}  // namespace

void set_level(Level level) { g_level = level; }
Level level() { return g_level; }

Level parse_level(const std::string& s) {
  for (Level l : {Level::Debug, Level::Info, Level::Warn, Level::Error, Level::Off})
    if (s == name(l)) return l;
  throw ValidationError("unknown log level '" + s + "'");
}

void emit(Level lvl, const std::string& event, const nlohmann::ordered_json& fields) {
  if (lvl < g_level.load() || g_level.load() == Level::Off) return;
  nlohmann::ordered_json rec;
  rec["level"] = name(lvl);
  rec["event"] = event;
  if (fields.is_object())
    for (const auto& [key, v] : fields.items()) rec[key] = v;
  const std::string line = rec.dump() + "\n";
  std::lock_guard<std::mutex> lock(g_mu);
  std::fputs(line.c_str(), stderr);
}

}  // namespace waveguide::log
