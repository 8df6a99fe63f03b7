// SPDX-License-Identifier: Apache-2.0
#include "courtside/core.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace courtside {

namespace {

Polygon rect(double x0, double x1, double y0, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  constexpr double eps = 1e-9;
  const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
  if (std::abs(cross) > eps * std::max(1.0, distance(a, b))) return false;
  return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
         p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

}  // namespace

std::string_view to_string(TeamSide side) { return side == TeamSide::Home ? "home" : "away"; }

std::string_view to_string(AttackDirection dir) {
  return dir == AttackDirection::Left ? "left" : "right";
}

std::optional<TeamSide> parse_team_side(std::string_view text) {
  if (text == "home") return TeamSide::Home;
  if (text == "away") return TeamSide::Away;
  return std::nullopt;
}

std::optional<AttackDirection> parse_attack_direction(std::string_view text) {
  if (text == "left") return AttackDirection::Left;
  if (text == "right") return AttackDirection::Right;
  return std::nullopt;
}

std::string_view to_string(RegionId region) {
  switch (region) {
    case RegionId::Key: return "Key";
    case RegionId::LeftLowPost: return "LeftLowPost";
    case RegionId::RightLowPost: return "RightLowPost";
    case RegionId::HighPost: return "HighPost";
    case RegionId::LeftWing: return "LeftWing";
    case RegionId::RightWing: return "RightWing";
    case RegionId::LeftCorner: return "LeftCorner";
    case RegionId::RightCorner: return "RightCorner";
    case RegionId::TopOfKey: return "TopOfKey";
    case RegionId::Backcourt: return "Backcourt";
  }
  return "?";
}

std::optional<RegionId> parse_region(std::string_view text) {
  for (RegionId r : kAllRegions)
    if (to_string(r) == text) return r;
  return std::nullopt;
}

std::string_view area_name(RegionId region) {
  switch (region) {
    case RegionId::Key: return "Key";
    case RegionId::LeftLowPost:
    case RegionId::RightLowPost: return "Post";
    case RegionId::HighPost: return "High Post";
    case RegionId::LeftWing:
    case RegionId::RightWing: return "Wing";
    case RegionId::LeftCorner:
    case RegionId::RightCorner: return "Corner";
    case RegionId::TopOfKey: return "Top";
    case RegionId::Backcourt: return "Backcourt";
  }
  return "?";
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Pass: return "Pass";
    case ActionKind::Cut: return "Cut";
    case ActionKind::Screen: return "Screen";
    case ActionKind::Shoot: return "Shoot";
  }
  return "?";
}

std::optional<ActionKind> parse_action_kind(std::string_view text) {
  for (ActionKind k : {ActionKind::Pass, ActionKind::Cut, ActionKind::Screen, ActionKind::Shoot})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

std::string_view code(TacticLabel label) {
  switch (label) {
    case TacticLabel::F23: return "F23";
    case TacticLabel::EV: return "EV";
    case TacticLabel::HK: return "HK";
    case TacticLabel::PD: return "PD";
    case TacticLabel::PT: return "PT";
    case TacticLabel::RB: return "RB";
    case TacticLabel::SP: return "SP";
    case TacticLabel::WS: return "WS";
    case TacticLabel::WV: return "WV";
    case TacticLabel::WW: return "WW";
  }
  return "?";
}

std::string_view display_name(TacticLabel label) {
  switch (label) {
    case TacticLabel::F23: return "2-3 Flex";
    case TacticLabel::EV: return "Elevator";
    case TacticLabel::HK: return "Hawk";
    case TacticLabel::PD: return "Pin-Down";
    case TacticLabel::PT: return "Princeton";
    case TacticLabel::RB: return "Back-Side Pick and Roll";
    case TacticLabel::SP: return "Side-Pick Slip and Pop";
    case TacticLabel::WS: return "Warrior Single";
    case TacticLabel::WV: return "Weave";
    case TacticLabel::WW: return "Wing-Wheel";
  }
  return "?";
}

std::optional<TacticLabel> parse_tactic(std::string_view text) {
  for (TacticLabel l : kAllTactics)
    if (code(l) == text) return l;
  return std::nullopt;
}

std::string tactic_code_list() {
  std::string out;
  for (TacticLabel l : kAllTactics) {
    if (!out.empty()) out += ", ";
    out += code(l);
  }
  return out;
}

bool polygon_contains(const Polygon& poly, Point2 p) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (on_segment(poly[i], poly[(i + 1) % n], p)) return true;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly[i];
    const Point2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

CourtSpec CourtSpec::standard() {
  CourtSpec court;
  court.regions = {
      {RegionId::Key, {rect(0, 19, 17, 33)}},
      {RegionId::LeftLowPost, {rect(0, 13, 33, 42)}},
      {RegionId::RightLowPost, {rect(0, 13, 8, 17)}},
      {RegionId::HighPost, {rect(13, 19, 8, 17), rect(13, 19, 33, 42)}},
      // Wings are L-shaped so they do not overlap the high-post blocks.
      {RegionId::LeftWing, {{{14, 42}, {19, 42}, {19, 33}, {31, 33}, {31, 50}, {14, 50}}}},
      {RegionId::RightWing, {{{14, 0}, {31, 0}, {31, 17}, {19, 17}, {19, 8}, {14, 8}}}},
      {RegionId::LeftCorner, {rect(0, 14, 42, 50)}},
      {RegionId::RightCorner, {rect(0, 14, 0, 8)}},
      {RegionId::TopOfKey, {rect(19, 31, 17, 33)}},
      {RegionId::Backcourt, {rect(31, 94, 0, 50)}},
  };
  return court;
}

void CourtSpec::check() const {
  if (regions.size() != kRegionCount)
    throw std::invalid_argument(fmt::format("court has {} regions, expected {}", regions.size(), kRegionCount));
  std::set<RegionId> seen;
  for (const auto& r : regions) {
    if (!seen.insert(r.id).second)
      throw std::invalid_argument(fmt::format("region {} listed twice", to_string(r.id)));
    if (r.parts.empty())
      throw std::invalid_argument(fmt::format("region {} has no polygon", to_string(r.id)));
  }
}

bool CourtSpec::in_bounds(Point2 p) const {
  return is_finite(p) && p.x >= -bounds_tolerance && p.x <= length + bounds_tolerance &&
         p.y >= -bounds_tolerance && p.y <= width + bounds_tolerance;
}

std::vector<Polygon> CourtSpec::region_polygons(RegionId id, AttackDirection dir) const {
  std::vector<Polygon> out;
  for (const auto& r : regions) {
    if (r.id != id) continue;
    for (const auto& part : r.parts) {
      Polygon poly;
      poly.reserve(part.size());
      for (Point2 v : part) poly.push_back(canonical(v, dir));
      out.push_back(std::move(poly));
    }
  }
  return out;
}

RegionId region_of(Point2 point, AttackDirection dir, const CourtSpec& court) {
  if (!court.in_bounds(point))
    throw OutOfBoundsError(fmt::format("point ({}, {}) is outside the court", point.x, point.y));
  Point2 p = court.canonical(point, dir);
  p.x = std::clamp(p.x, 0.0, court.length);
  p.y = std::clamp(p.y, 0.0, court.width);
  for (const auto& region : court.regions)
    for (const auto& part : region.parts)
      if (polygon_contains(part, p)) return region.id;
  throw std::logic_error(fmt::format("no region contains ({}, {})", p.x, p.y));
}

const PlayerSample* TrackedFrame::find(std::string_view player_id) const {
  for (const auto& p : players)
    if (p.id == player_id) return &p;
  return nullptr;
}

const PlayerRef* Clip::player(std::string_view player_id) const {
  for (const auto& p : rosters)
    if (p.player_id == player_id) return &p;
  return nullptr;
}

const PlayerRef* Clip::player_by_name(std::string_view full_name) const {
  for (const auto& p : rosters)
    if (p.full_name == full_name) return &p;
  return nullptr;
}

std::vector<PlayerRef> Clip::team(TeamSide side) const {
  std::vector<PlayerRef> out;
  for (const auto& p : rosters)
    if (p.team == side) out.push_back(p);
  return out;
}

bool Clip::is_offense(std::string_view player_id) const {
  const PlayerRef* p = player(player_id);
  return p != nullptr && p->team == offense_team;
}

Point2 Clip::position(std::string_view player_id, std::size_t frame_pos) const {
  const PlayerSample* s = frames.at(frame_pos).find(player_id);
  if (s == nullptr)
    throw std::out_of_range(fmt::format("player '{}' missing from frame {}", player_id,
                                        frames[frame_pos].frame_index));
  return s->pos;
}

std::optional<std::size_t> Clip::frame_pos(int frame_index) const {
  if (frames.empty()) return std::nullopt;
  const long pos = static_cast<long>(frame_index) - frames.front().frame_index;
  if (pos < 0 || pos >= static_cast<long>(frames.size())) return std::nullopt;
  if (frames[pos].frame_index != frame_index) return std::nullopt;
  return static_cast<std::size_t>(pos);
}

std::vector<std::string> validate_clip(const Clip& clip) {
  std::vector<std::string> out;
  if (clip.clip_id.empty()) out.emplace_back("clip_id is empty");
  if (!(std::isfinite(clip.fps) && clip.fps > 0)) out.push_back(fmt::format("fps must be positive, got {}", clip.fps));
  if (clip.frames.empty()) out.emplace_back("clip has no frames");

  std::set<std::string> ids;
  for (const auto& p : clip.rosters) {
    if (p.player_id.empty()) out.emplace_back("roster entry with empty player_id");
    if (!ids.insert(p.player_id).second) out.push_back(fmt::format("duplicate player_id '{}'", p.player_id));
  }
  const auto offense = clip.offense();
  if (offense.size() != 5)
    out.push_back(fmt::format("offense team {} has {} roster entries, expected 5",
                              to_string(clip.offense_team), offense.size()));

  std::set<std::string> seen_in_frames;
  for (std::size_t i = 0; i < clip.frames.size(); ++i) {
    const TrackedFrame& f = clip.frames[i];
    const int fi = f.frame_index;
    if (i > 0) {
      const int prev = clip.frames[i - 1].frame_index;
      if (fi <= prev)
        out.push_back(fmt::format("frame {}: frame_index not increasing (previous {})", fi, prev));
      else if (fi != prev + 1)
        out.push_back(fmt::format("frame {}: frame_index not contiguous (previous {})", fi, prev));
    }
    if (!std::isfinite(f.timestamp)) out.push_back(fmt::format("frame {}: timestamp not finite", fi));
    if (!clip.court.in_bounds(f.ball))
      out.push_back(fmt::format("frame {}: ball ({}, {}) outside court", fi, f.ball.x, f.ball.y));
    if (f.ball_bbox && !(f.ball_bbox->w > 0 && f.ball_bbox->h > 0))
      out.push_back(fmt::format("frame {}: ball_bbox has non-positive size", fi));
    if (f.players.size() != 10)
      out.push_back(fmt::format("frame {}: expected 10 players, got {}", fi, f.players.size()));

    int home = 0;
    int away = 0;
    std::set<std::string> in_frame;
    for (const auto& p : f.players) {
      if (!in_frame.insert(p.id).second) out.push_back(fmt::format("frame {}: player '{}' listed twice", fi, p.id));
      const PlayerRef* ref = clip.player(p.id);
      if (ref == nullptr) {
        out.push_back(fmt::format("frame {}: player '{}' not in rosters", fi, p.id));
      } else {
        (ref->team == TeamSide::Home ? home : away)++;
      }
      seen_in_frames.insert(p.id);
      if (!clip.court.in_bounds(p.pos))
        out.push_back(fmt::format("frame {}: player '{}' position ({}, {}) outside court", fi, p.id, p.pos.x, p.pos.y));
      if (p.bbox && !(p.bbox->w > 0 && p.bbox->h > 0))
        out.push_back(fmt::format("frame {}: player '{}' bbox has non-positive size", fi, p.id));
    }
    if (f.players.size() == 10 && (home != 5 || away != 5))
      out.push_back(fmt::format("frame {}: expected 5 players per team, got home={} away={}", fi, home, away));
  }
  if (!clip.frames.empty())
    for (const auto& p : offense)
      if (!seen_in_frames.contains(p.player_id))
        out.push_back(fmt::format("offense player '{}' never appears in frames", p.player_id));
  return out;
}

}  // namespace courtside
