// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace courtside {

/// Court-space position in feet. Origin is the left baseline / sideline corner.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline Point2 lerp(Point2 a, Point2 b, double t) { return a + (b - a) * t; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Video-space box in pixels.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  Point2 center() const { return {x + w / 2.0, y + h / 2.0}; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

enum class TeamSide { Home, Away };
enum class AttackDirection { Left, Right };

std::string_view to_string(TeamSide side);
std::string_view to_string(AttackDirection dir);
std::optional<TeamSide> parse_team_side(std::string_view text);
std::optional<AttackDirection> parse_attack_direction(std::string_view text);
inline TeamSide opponent(TeamSide side) { return side == TeamSide::Home ? TeamSide::Away : TeamSide::Home; }

// Court taxonomy. Enumerator order is the default tie-break order for region lookup.
enum class RegionId {
  Key,
  LeftLowPost,
  RightLowPost,
  HighPost,
  LeftWing,
  RightWing,
  LeftCorner,
  RightCorner,
  TopOfKey,
  Backcourt,
};
inline constexpr std::size_t kRegionCount = 10;
inline constexpr std::array<RegionId, kRegionCount> kAllRegions = {
    RegionId::Key,       RegionId::LeftLowPost, RegionId::RightLowPost, RegionId::HighPost,
    RegionId::LeftWing,  RegionId::RightWing,   RegionId::LeftCorner,   RegionId::RightCorner,
    RegionId::TopOfKey,  RegionId::Backcourt};

std::string_view to_string(RegionId region);
std::optional<RegionId> parse_region(std::string_view text);
/// Short court-area name used in rendered action text ("Wing", "Top", "Post", ...).
std::string_view area_name(RegionId region);

enum class ActionKind { Pass, Cut, Screen, Shoot };
std::string_view to_string(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view text);

enum class TacticLabel { F23, EV, HK, PD, PT, RB, SP, WS, WV, WW };
inline constexpr std::size_t kTacticCount = 10;
inline constexpr std::array<TacticLabel, kTacticCount> kAllTactics = {
    TacticLabel::F23, TacticLabel::EV, TacticLabel::HK, TacticLabel::PD, TacticLabel::PT,
    TacticLabel::RB,  TacticLabel::SP, TacticLabel::WS, TacticLabel::WV, TacticLabel::WW};

std::string_view code(TacticLabel label);
std::string_view display_name(TacticLabel label);
std::optional<TacticLabel> parse_tactic(std::string_view code);
/// "F23, EV, HK, ..." for error messages.
std::string tactic_code_list();

/// Simple polygon in court feet; vertices in order, closing edge implied.
using Polygon = std::vector<Point2>;

/// A region may be made of several disjoint polygons.
struct RegionShape {
  RegionId id = RegionId::Key;
  std::vector<Polygon> parts;
};

/// Point-in-polygon with boundary points counted as inside.
bool polygon_contains(const Polygon& poly, Point2 p);

class OutOfBoundsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CourtSpec {
  double length = 94.0;
  double width = 50.0;
  Point2 hoop_left{5.25, 25.0};
  Point2 hoop_right{88.75, 25.0};
  /// Regions for the canonical left-attacking half, in tie-break order.
  std::vector<RegionShape> regions;
  /// Positions up to this far outside the court are still accepted.
  double bounds_tolerance = 2.0;

  /// 94 x 50 ft court with the default ten-region half-court table.
  static CourtSpec standard();

  /// Throws std::invalid_argument unless exactly the ten region ids are present once each.
  void check() const;

  bool in_bounds(Point2 p) const;
  Point2 attacked_hoop(AttackDirection dir) const {
    return dir == AttackDirection::Left ? hoop_left : hoop_right;
  }
  /// 180-degree rotation about center court; maps a right-attacking frame onto the left one.
  Point2 mirror(Point2 p) const { return {length - p.x, width - p.y}; }
  Point2 canonical(Point2 p, AttackDirection dir) const {
    return dir == AttackDirection::Left ? p : mirror(p);
  }
  /// Polygons of a region expressed in actual court coordinates for the given direction.
  std::vector<Polygon> region_polygons(RegionId id, AttackDirection dir) const;
};

/// Region containing `point`; boundary points resolve to the earliest region in the court's order.
/// Throws OutOfBoundsError when the point lies outside the court plus tolerance.
RegionId region_of(Point2 point, AttackDirection dir, const CourtSpec& court);

struct TrajectorySample {
  int frame = 0;
  Point2 pos;
  friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

/// Ordered samples with strictly increasing frame indices.
struct Trajectory {
  std::vector<TrajectorySample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct PlayerRef {
  std::string player_id;
  std::string full_name;
  TeamSide team = TeamSide::Home;
  friend bool operator==(const PlayerRef&, const PlayerRef&) = default;
};

struct PlayerSample {
  std::string id;
  Point2 pos;
  std::optional<BoundingBox> bbox;
  friend bool operator==(const PlayerSample&, const PlayerSample&) = default;
};

struct TrackedFrame {
  int frame_index = 0;
  double timestamp = 0.0;
  Point2 ball;
  std::optional<BoundingBox> ball_bbox;
  std::vector<PlayerSample> players;

  const PlayerSample* find(std::string_view player_id) const;
  friend bool operator==(const TrackedFrame&, const TrackedFrame&) = default;
};

inline constexpr double kDefaultFps = 25.0;

struct Clip {
  std::string clip_id;
  double fps = kDefaultFps;
  std::vector<TrackedFrame> frames;
  std::vector<PlayerRef> rosters;
  TeamSide offense_team = TeamSide::Home;
  AttackDirection attack_direction = AttackDirection::Left;
  CourtSpec court = CourtSpec::standard();
  std::optional<std::string> video_uri;

  const PlayerRef* player(std::string_view player_id) const;
  const PlayerRef* player_by_name(std::string_view full_name) const;
  /// Roster entries of one team, in roster order.
  std::vector<PlayerRef> team(TeamSide side) const;
  std::vector<PlayerRef> offense() const { return team(offense_team); }
  std::vector<PlayerRef> defense() const { return team(opponent(offense_team)); }
  bool is_offense(std::string_view player_id) const;

  /// Position of a player at a frame position (index into `frames`, not frame_index).
  Point2 position(std::string_view player_id, std::size_t frame_pos) const;
  /// Frame position (index into `frames`) of a frame_index, if present.
  std::optional<std::size_t> frame_pos(int frame_index) const;

  friend bool operator==(const Clip& a, const Clip& b) {
    return a.clip_id == b.clip_id && a.fps == b.fps && a.frames == b.frames &&
           a.rosters == b.rosters && a.offense_team == b.offense_team &&
           a.attack_direction == b.attack_direction && a.video_uri == b.video_uri;
  }
};

/// Human-readable invariant violations; empty iff the clip is well formed.
std::vector<std::string> validate_clip(const Clip& clip);

}  // namespace courtside
