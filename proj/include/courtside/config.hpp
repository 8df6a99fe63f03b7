// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "courtside/detection.hpp"
#include "courtside/filtering.hpp"
#include "courtside/overlay.hpp"
#include "courtside/tactics.hpp"

namespace courtside {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ChatMode { Mock, Remote };

struct ChatConfig {
  ChatMode mode = ChatMode::Mock;
  std::filesystem::path script;  // mock rule file
  std::string endpoint;
  std::string model = "gpt-4";
  std::string key;
  std::chrono::milliseconds timeout{30000};
  int retries = 2;
  bool fallback = true;
};

/// Key = value settings. Blank lines and lines starting with '#' are ignored; relative paths
/// resolve against the directory holding the file.
///
///   data_dir, clips_dir, reference_path, tactic_descriptions_path, stats_path,
///   tools_fixture_path, static_dir, listen (host:port)
///   chat.mode (mock|remote), chat.script, chat.endpoint, chat.model, chat.key,
///   chat.timeout_ms, chat.retries, chat.fallback (true|false)
///   knn.k, distance.radius, distance.correspondence (fixed_slot|optimal_assignment)
///   detection.possession_radius, detection.possession_hold, detection.marking_hysteresis,
///   detection.screen_proximity, detection.cut_speed, detection.cut_window
///   filter.cut_receive_window, filter.screen_relevance_radius
///   overlay.horizon, overlay.home_color, overlay.away_color, overlay.video_height
///
/// data_dir defaults to the directory of the file; the other data paths default to
/// clips/, references.json, tactic_descriptions.json, stats.csv, tools_fixture.json and
/// static/ under it. chat.key may be "env:NAME" to read an environment variable.
struct AppConfig {
  std::filesystem::path data_dir;
  std::filesystem::path clips_dir;
  std::filesystem::path reference_path;
  std::filesystem::path tactic_descriptions_path;
  std::filesystem::path stats_path;
  std::filesystem::path tools_fixture_path;
  std::filesystem::path static_dir;
  std::string listen = "127.0.0.1:8080";
  ChatConfig chat;
  int knn_k = 3;
  DistanceParams distance;
  DetectionParams detection;
  FilterParams filter;
  OverlayOptions overlay;

  /// Throws ConfigError on unknown keys or malformed values.
  static AppConfig parse(std::string_view text, const std::filesystem::path& base_dir);
  static AppConfig load(const std::filesystem::path& file);

  /// Throws ConfigError: mock mode needs chat.script, remote mode needs chat.endpoint and chat.key.
  void check() const;
};

/// Explicit path when given, otherwise $COURTSIDE_CONFIG, otherwise `fallback`.
std::filesystem::path resolve_config_path(const std::optional<std::string>& explicit_path,
                                          const std::filesystem::path& fallback);

}  // namespace courtside
