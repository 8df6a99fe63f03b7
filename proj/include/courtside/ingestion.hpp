// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "courtside/core.hpp"
#include "courtside/events.hpp"

namespace courtside {

inline constexpr std::string_view kClipSchema = "courtside-clip/1";
inline constexpr std::string_view kReferenceSchema = "courtside-ref/1";
inline constexpr std::string_view kScriptSchema = "courtside-script/1";

/// Failure to load a document. `path` is a JSON pointer (or CSV row) locating the problem;
/// `line` is set when the position in the text is known.
class LoadError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Schema, Invariant };

  LoadError(Kind kind, std::string path, std::optional<int> line, const std::string& message);

  Kind kind() const { return kind_; }
  const std::string& path() const { return path_; }
  std::optional<int> line() const { return line_; }

 private:
  Kind kind_;
  std::string path_;
  std::optional<int> line_;
};

// ---- clips ----------------------------------------------------------------

Clip load_clip(std::string_view document);
std::string save_clip(const Clip& clip);
nlohmann::json clip_to_json(const Clip& clip);
nlohmann::json frame_to_json(const TrackedFrame& frame);

// ---- reference tactic sets ------------------------------------------------

/// Five offensive trajectories in normalized [0,1]^2 court coordinates.
struct ReferenceClip {
  TacticLabel label = TacticLabel::F23;
  std::array<Trajectory, 5> trajectories;
  friend bool operator==(const ReferenceClip&, const ReferenceClip&) = default;
};

struct ReferenceSet {
  std::vector<ReferenceClip> clips;
};

ReferenceSet load_reference_set(std::string_view document);
std::string save_reference_set(const ReferenceSet& refs);

// ---- synthetic scripted plays ---------------------------------------------

struct Waypoint {
  double time = 0.0;
  Point2 pos;
};

/// Holder id that parks the ball on the attacked hoop (shots).
inline constexpr std::string_view kHoopHolder = "@hoop";

/// From `time` on, `holder` carries the ball. An empty holder releases it into flight
/// toward the next scheduled holder.
struct BallHandoff {
  double time = 0.0;
  std::optional<std::string> holder;
};

struct PlayScript {
  std::string clip_id = "synthetic";
  std::vector<PlayerRef> rosters;
  TeamSide offense_team = TeamSide::Home;
  AttackDirection attack_direction = AttackDirection::Left;
  /// Waypoints per player_id; times non-decreasing.
  std::map<std::string, std::vector<Waypoint>> waypoints;
  std::vector<BallHandoff> ball;
  std::vector<ActionEvent> expected_events;
  std::optional<TacticLabel> tactic_label;
  /// Defaults to the last scheduled waypoint or handoff time.
  std::optional<double> duration;
};

/// Throws std::invalid_argument when the script is empty or inconsistent.
void check_script(const PlayScript& script);
double script_duration(const PlayScript& script);

struct SyntheticPlay {
  Clip clip;
  std::vector<ActionEvent> events;
};

/// Piecewise-linear waypoint interpolation plus seeded Gaussian jitter of `noise_sigma` feet.
/// The ball sits 1 ft from its holder toward the attacked hoop and moves linearly while in
/// flight between holders. Identical inputs give identical clips.
SyntheticPlay generate_synthetic_play(const PlayScript& script, double fps, double noise_sigma,
                                      std::uint64_t seed);

PlayScript load_play_script(std::string_view document);
std::string save_play_script(const PlayScript& script);

// ---- stats tables ---------------------------------------------------------

enum class ColumnType { Int, Float, String };
std::string_view to_string(ColumnType type);

using Cell = std::variant<std::int64_t, double, std::string>;

struct StatsColumn {
  std::string name;
  ColumnType type = ColumnType::String;
};

struct StatsTable {
  std::vector<StatsColumn> columns;
  std::vector<std::vector<Cell>> rows;

  std::optional<std::size_t> column_index(std::string_view name) const;
};

/// RFC-4180 CSV with a header row. Column types are inferred as int, then float, then string.
StatsTable load_stats_table(std::string_view document);

/// Whole file into a string; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

}  // namespace courtside
