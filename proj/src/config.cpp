// SPDX-License-Identifier: Apache-2.0
#include "courtside/config.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "courtside/ingestion.hpp"

namespace courtside {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(fmt::format("{}: '{}' is not a number", key, v));
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int out = 0;
  try {
    out = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(fmt::format("{}: '{}' is not an integer", key, v));
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(fmt::format("{}: '{}' is not true or false", key, v));
}

}  // namespace

AppConfig AppConfig::parse(std::string_view text, const fs::path& base_dir) {
  AppConfig c;
  std::map<std::string, std::string> raw;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", lineno));
    raw[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }

  auto resolve = [&](const std::string& v, const fs::path& base) {
    const fs::path p(v);
    return p.is_absolute() ? p : (base / p).lexically_normal();
  };

  c.data_dir = base_dir;
  if (auto it = raw.find("data_dir"); it != raw.end()) c.data_dir = resolve(it->second, base_dir);
  c.clips_dir = c.data_dir / "clips";
  c.reference_path = c.data_dir / "references.json";
  c.tactic_descriptions_path = c.data_dir / "tactic_descriptions.json";
  c.stats_path = c.data_dir / "stats.csv";
  c.tools_fixture_path = c.data_dir / "tools_fixture.json";
  c.static_dir = c.data_dir / "static";

  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto path_key = [&](fs::path& target) -> Setter {
    return [&resolve, &base_dir, t = &target](const std::string&, const std::string& v) { *t = resolve(v, base_dir); };
  };
  const std::map<std::string, Setter> setters = {
      {"data_dir", [](const std::string&, const std::string&) {}},
      {"clips_dir", path_key(c.clips_dir)},
      {"reference_path", path_key(c.reference_path)},
      {"tactic_descriptions_path", path_key(c.tactic_descriptions_path)},
      {"stats_path", path_key(c.stats_path)},
      {"tools_fixture_path", path_key(c.tools_fixture_path)},
      {"static_dir", path_key(c.static_dir)},
      {"listen", [&](const std::string&, const std::string& v) { c.listen = v; }},
      {"chat.mode",
       [&](const std::string& k, const std::string& v) {
         if (v == "mock") c.chat.mode = ChatMode::Mock;
         else if (v == "remote") c.chat.mode = ChatMode::Remote;
         else throw ConfigError(fmt::format("{}: '{}' is not mock or remote", k, v));
       }},
      {"chat.script", path_key(c.chat.script)},
      {"chat.endpoint", [&](const std::string&, const std::string& v) { c.chat.endpoint = v; }},
      {"chat.model", [&](const std::string&, const std::string& v) { c.chat.model = v; }},
      {"chat.key",
       [&](const std::string&, const std::string& v) {
         if (v.rfind("env:", 0) == 0) {
           const char* env = std::getenv(v.substr(4).c_str());
           c.chat.key = env ? env : "";
         } else {
           c.chat.key = v;
         }
       }},
      {"chat.timeout_ms",
       [&](const std::string& k, const std::string& v) { c.chat.timeout = std::chrono::milliseconds(to_int(k, v)); }},
      {"chat.retries", [&](const std::string& k, const std::string& v) { c.chat.retries = to_int(k, v); }},
      {"chat.fallback", [&](const std::string& k, const std::string& v) { c.chat.fallback = to_bool(k, v); }},
      {"knn.k", [&](const std::string& k, const std::string& v) { c.knn_k = to_int(k, v); }},
      {"distance.radius", [&](const std::string& k, const std::string& v) { c.distance.radius = to_int(k, v); }},
      {"distance.correspondence",
       [&](const std::string& k, const std::string& v) {
         const auto corr = parse_correspondence(v);
         if (!corr) throw ConfigError(fmt::format("{}: '{}' is not fixed_slot or optimal_assignment", k, v));
         c.distance.correspondence = *corr;
       }},
      {"detection.possession_radius",
       [&](const std::string& k, const std::string& v) { c.detection.possession_radius = to_double(k, v); }},
      {"detection.possession_hold",
       [&](const std::string& k, const std::string& v) { c.detection.possession_hold = to_int(k, v); }},
      {"detection.marking_hysteresis",
       [&](const std::string& k, const std::string& v) { c.detection.marking_hysteresis = to_int(k, v); }},
      {"detection.screen_proximity",
       [&](const std::string& k, const std::string& v) { c.detection.screen_proximity = to_double(k, v); }},
      {"detection.cut_speed", [&](const std::string& k, const std::string& v) { c.detection.cut_speed = to_double(k, v); }},
      {"detection.cut_window",
       [&](const std::string& k, const std::string& v) { c.detection.cut_window = to_double(k, v); }},
      {"filter.cut_receive_window",
       [&](const std::string& k, const std::string& v) { c.filter.cut_receive_window = to_double(k, v); }},
      {"filter.screen_relevance_radius",
       [&](const std::string& k, const std::string& v) { c.filter.screen_relevance_radius = to_double(k, v); }},
      {"overlay.horizon", [&](const std::string& k, const std::string& v) { c.overlay.horizon = to_double(k, v); }},
      {"overlay.home_color", [&](const std::string&, const std::string& v) { c.overlay.palette.home = v; }},
      {"overlay.away_color", [&](const std::string&, const std::string& v) { c.overlay.palette.away = v; }},
      {"overlay.video_height",
       [&](const std::string& k, const std::string& v) { c.overlay.video_height = to_double(k, v); }},
  };
  for (const auto& [key, value] : raw) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(fmt::format("unknown configuration key '{}'", key));
    it->second(key, value);
  }
  return c;
}

AppConfig AppConfig::load(const fs::path& file) {
  std::string text;
  try {
    text = read_file(file.string());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const fs::path base = file.has_parent_path() ? file.parent_path() : fs::path(".");
  return parse(text, base);
}

void AppConfig::check() const {
  if (chat.mode == ChatMode::Mock && chat.script.empty()) throw ConfigError("chat.mode = mock needs chat.script");
  if (chat.mode == ChatMode::Remote && (chat.endpoint.empty() || chat.key.empty()))
    throw ConfigError("chat.mode = remote needs chat.endpoint and chat.key");
  if (chat.timeout.count() <= 0) throw ConfigError("chat.timeout_ms must be positive");
  if (chat.retries < 0) throw ConfigError("chat.retries must not be negative");
  if (knn_k < 1) throw ConfigError("knn.k must be at least 1");
  if (distance.radius < 0) throw ConfigError("distance.radius must not be negative");
  if (!(overlay.horizon > 0.0)) throw ConfigError("overlay.horizon must be positive");
  if (!(overlay.video_height > 0.0)) throw ConfigError("overlay.video_height must be positive");
  try {
    detection.check();
    filter.check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

fs::path resolve_config_path(const std::optional<std::string>& explicit_path, const fs::path& fallback) {
  if (explicit_path && !explicit_path->empty()) return *explicit_path;
  if (const char* env = std::getenv("COURTSIDE_CONFIG"); env != nullptr && *env != '\0') return env;
  return fallback;
}

}  // namespace courtside
