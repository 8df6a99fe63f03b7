// SPDX-License-Identifier: Apache-2.0
#include "courtside/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

#include "courtside/assignment.hpp"

namespace courtside {

void DetectionParams::check() const {
  if (!(possession_radius > 0 && possession_hold > 0 && marking_hysteresis > 0 && screen_proximity > 0 &&
        cut_speed > 0 && cut_window > 0))
    throw std::invalid_argument("detection parameters must all be positive");
}

const std::string* MarkingMap::offense_of(std::string_view defender) const {
  for (const auto& [d, o] : pairs)
    if (d == defender) return &o;
  return nullptr;
}

// ---- possession -----------------------------------------------------------

PossessionTimeline compute_possession(const Clip& clip, const DetectionParams& params) {
  params.check();
  PossessionTimeline out;
  out.owners.reserve(clip.frames.size());
  std::optional<std::string> streak_id;
  int streak = 0;
  bool had_owner = false;

  for (const auto& frame : clip.frames) {
    // Nearest player within the radius; equal distances go to the smaller player_id.
    const PlayerSample* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& p : frame.players) {
      const double d = distance(p.pos, frame.ball);
      if (d > params.possession_radius) continue;
      if (d < best_d || (d == best_d && best != nullptr && p.id < best->id)) {
        best = &p;
        best_d = d;
      }
    }

    if (best == nullptr) {
      streak_id.reset();
      streak = 0;
      out.owners.push_back(had_owner ? Owner::in_flight() : Owner::dead());
      continue;
    }
    if (streak_id && *streak_id == best->id) {
      ++streak;
    } else {
      streak_id = best->id;
      streak = 1;
    }
    if (streak >= params.possession_hold) {
      had_owner = true;
      out.owners.push_back(Owner::player(best->id));
    } else if (!out.owners.empty()) {
      out.owners.push_back(out.owners.back());
    } else {
      out.owners.push_back(Owner::dead());
    }
  }
  return out;
}

// ---- marking --------------------------------------------------------------

namespace {

struct Sides {
  std::vector<std::string> defenders;  // sorted ids
  std::vector<std::string> attackers;  // sorted ids
};

Sides sorted_sides(const Clip& clip) {
  Sides s;
  for (const auto& p : clip.rosters) (p.team == clip.offense_team ? s.attackers : s.defenders).push_back(p.player_id);
  std::sort(s.defenders.begin(), s.defenders.end());
  std::sort(s.attackers.begin(), s.attackers.end());
  return s;
}

CostMatrix marking_costs(const Clip& clip, const Sides& sides, std::size_t frame_pos) {
  if (sides.defenders.size() != sides.attackers.size())
    throw std::invalid_argument(fmt::format("marking needs equal team sizes, got {} defenders and {} attackers",
                                            sides.defenders.size(), sides.attackers.size()));
  CostMatrix cost(sides.defenders.size());
  for (std::size_t d = 0; d < sides.defenders.size(); ++d) {
    const Point2 dp = clip.position(sides.defenders[d], frame_pos);
    for (std::size_t a = 0; a < sides.attackers.size(); ++a)
      cost(d, a) = distance(dp, clip.position(sides.attackers[a], frame_pos));
  }
  return cost;
}

MarkingMap to_map(const Sides& sides, const std::vector<int>& row_to_col, double cost) {
  MarkingMap m;
  m.cost = cost;
  for (std::size_t d = 0; d < sides.defenders.size(); ++d)
    m.pairs.emplace_back(sides.defenders[d], sides.attackers[static_cast<std::size_t>(row_to_col[d])]);
  return m;
}

double cost_of(const CostMatrix& cost, const std::vector<int>& row_to_col) {
  double total = 0.0;
  for (std::size_t r = 0; r < row_to_col.size(); ++r) total += cost(r, static_cast<std::size_t>(row_to_col[r]));
  return total;
}

}  // namespace

MarkingMap optimal_marking(const Clip& clip, std::size_t frame_pos) {
  const Sides sides = sorted_sides(clip);
  const Assignment a = solve_assignment(marking_costs(clip, sides, frame_pos));
  return to_map(sides, a.row_to_col, a.cost);
}

MarkingTimeline compute_marking_timeline(const Clip& clip, const DetectionParams& params) {
  params.check();
  MarkingTimeline out;
  if (clip.frames.empty()) return out;
  const Sides sides = sorted_sides(clip);
  out.frames.reserve(clip.frames.size());

  std::vector<int> stable;
  std::vector<int> candidate;
  int streak = 0;
  for (std::size_t f = 0; f < clip.frames.size(); ++f) {
    const CostMatrix cost = marking_costs(clip, sides, f);
    const Assignment best = solve_assignment(cost);
    if (f == 0) {
      stable = best.row_to_col;
    } else {
      const double current = cost_of(cost, stable);
      const double tol = 1e-9 * std::max(1.0, current);
      if (best.row_to_col != stable && best.cost < current - tol) {
        if (best.row_to_col == candidate) {
          ++streak;
        } else {
          candidate = best.row_to_col;
          streak = 1;
        }
        if (streak >= params.marking_hysteresis) {
          stable = candidate;
          candidate.clear();
          streak = 0;
        }
      } else {
        candidate.clear();
        streak = 0;
      }
    }
    out.frames.push_back(to_map(sides, stable, cost_of(cost, stable)));
  }
  return out;
}

MarkingMap compute_marking(const Clip& clip, int frame, const DetectionParams& params) {
  const auto pos = clip.frame_pos(frame);
  if (!pos) throw std::out_of_range(fmt::format("frame {} not in clip '{}'", frame, clip.clip_id));
  if (*pos == 0) return optimal_marking(clip, 0);
  Clip prefix = clip;
  prefix.frames.resize(*pos + 1);
  return compute_marking_timeline(prefix, params).frames.back();
}

// ---- pass / shoot ---------------------------------------------------------

namespace {

ActionEvent transfer_event(const Clip& clip, ActionKind kind, const std::string& from, std::size_t last_owned,
                           std::size_t end_pos, const std::optional<std::string>& to) {
  ActionEvent e;
  e.kind = kind;
  e.actor = from;
  e.target = to;
  e.anchor_frame = clip.frames[last_owned].frame_index;
  e.start_frame = e.anchor_frame;
  e.end_frame = clip.frames[end_pos].frame_index;
  e.actor_pos = clip.position(from, last_owned);
  if (to) e.target_pos = clip.position(*to, last_owned);
  return e;
}

/// Calls `on_transfer(from, last_owned_pos, to, first_owned_pos)` for every maximal
/// owner change, and `on_end(from, last_owned_pos)` when the clip ends in flight.
template <typename Transfer, typename End>
void walk_transitions(const PossessionTimeline& possession, Transfer on_transfer, End on_end) {
  std::optional<std::string> last;
  std::size_t last_pos = 0;
  const auto& owners = possession.owners;
  for (std::size_t f = 0; f < owners.size(); ++f) {
    if (!owners[f].is_player()) continue;
    if (last && *last != owners[f].player_id) on_transfer(*last, last_pos, owners[f].player_id, f);
    last = owners[f].player_id;
    last_pos = f;
  }
  if (last && !owners.empty() && owners.back().state == Owner::State::InFlight) on_end(*last, last_pos);
}

}  // namespace

std::vector<ActionEvent> detect_pass(const Clip& clip, const PossessionTimeline& possession) {
  std::vector<ActionEvent> out;
  walk_transitions(
      possession,
      [&](const std::string& from, std::size_t last_owned, const std::string& to, std::size_t first_owned) {
        if (clip.is_offense(from) && clip.is_offense(to))
          out.push_back(transfer_event(clip, ActionKind::Pass, from, last_owned, first_owned, to));
      },
      [](const std::string&, std::size_t) {});
  return out;
}

std::vector<ActionEvent> detect_shoot(const Clip& clip, const PossessionTimeline& possession) {
  std::vector<ActionEvent> out;
  walk_transitions(
      possession,
      [&](const std::string& from, std::size_t last_owned, const std::string& to, std::size_t first_owned) {
        if (clip.is_offense(from) && !clip.is_offense(to))
          out.push_back(transfer_event(clip, ActionKind::Shoot, from, last_owned, first_owned, std::nullopt));
      },
      [&](const std::string& from, std::size_t last_owned) {
        if (clip.is_offense(from))
          out.push_back(transfer_event(clip, ActionKind::Shoot, from, last_owned, clip.frames.size() - 1, std::nullopt));
      });
  return out;
}

// ---- cut ------------------------------------------------------------------

std::vector<ActionEvent> detect_cut(const Clip& clip, const PossessionTimeline& possession,
                                    const DetectionParams& params) {
  params.check();
  std::vector<ActionEvent> out;
  const std::size_t n = clip.frames.size();
  const auto window = static_cast<std::size_t>(std::max(1L, std::lround(params.cut_window * clip.fps)));
  if (n <= window) return out;
  const double window_seconds = static_cast<double>(window) / clip.fps;

  for (const auto& player : clip.offense()) {
    const std::string& id = player.player_id;
    auto qualifies = [&](std::size_t f) {
      if (possession.owners[f].is(id)) return false;
      const double speed = distance(clip.position(id, f + window), clip.position(id, f)) / window_seconds;
      return speed >= params.cut_speed;
    };
    std::size_t f = 0;
    while (f + window < n) {
      if (!qualifies(f)) {
        ++f;
        continue;
      }
      const std::size_t run_start = f;
      // Dips shorter than one window are bridged.
      for (;;) {
        while (f + 1 + window < n && qualifies(f + 1)) ++f;
        std::size_t next = f + 2;
        while (next + window < n && next <= f + window && !qualifies(next) && !possession.owners[next].is(id)) ++next;
        if (next + window >= n || next > f + window || !qualifies(next)) break;
        f = next;
      }
      const std::size_t run_end = f + window;
      const Point2 from = clip.position(id, run_start);
      const Point2 to = clip.position(id, run_end);
      const RegionId from_region = region_of(from, clip.attack_direction, clip.court);
      const RegionId to_region = region_of(to, clip.attack_direction, clip.court);
      if (from_region != to_region) {
        ActionEvent e;
        e.kind = ActionKind::Cut;
        e.actor = id;
        e.start_frame = clip.frames[run_start].frame_index;
        e.anchor_frame = e.start_frame;
        e.end_frame = clip.frames[run_end].frame_index;
        e.from_region = from_region;
        e.to_region = to_region;
        e.actor_pos = from;
        out.push_back(std::move(e));
      }
      ++f;
    }
  }
  std::sort(out.begin(), out.end(), chronological_less);
  return out;
}

// ---- screen ---------------------------------------------------------------

std::vector<ActionEvent> detect_screen(const Clip& clip, const PossessionTimeline& possession,
                                       const MarkingTimeline& marking, const DetectionParams& params) {
  params.check();
  std::vector<ActionEvent> out;
  const std::size_t n = clip.frames.size();
  if (n < 2 || marking.frames.size() != n) return out;
  const auto hysteresis = static_cast<std::size_t>(params.marking_hysteresis);
  const auto attackers = clip.offense();
  const auto defenders = clip.defense();

  for (const auto& screener : attackers) {
    const std::string& s = screener.player_id;
    for (const auto& defender : defenders) {
      const std::string& d = defender.player_id;
      // S near D while D marks someone else and S does not hold the ball.
      auto near = [&](std::size_t f) {
        if (possession.owners[f].is(s)) return false;
        const std::string* marked = marking.frames[f].offense_of(d);
        if (marked == nullptr || *marked == s) return false;
        return distance(clip.position(s, f), clip.position(d, f)) <= params.screen_proximity;
      };
      for (std::size_t g = 1; g < n; ++g) {
        const std::string* before = marking.frames[g - 1].offense_of(d);
        const std::string* after = marking.frames[g].offense_of(d);
        if (before == nullptr || after == nullptr || *before == *after) continue;

        // Latest proximity frame within `hysteresis` frames before the change.
        const std::size_t lo = g - 1 >= hysteresis ? g - 1 - hysteresis : 0;
        std::optional<std::size_t> latest;
        for (std::size_t f = g; f-- > lo;) {
          if (near(f)) {
            latest = f;
            break;
          }
        }
        if (!latest) continue;

        // Walk back to the start of the proximity episode, bridging gaps up to `hysteresis` frames.
        std::size_t start = *latest;
        std::size_t gap = 0;
        for (std::size_t f = *latest; f-- > 0;) {
          if (near(f)) {
            start = f;
            gap = 0;
          } else if (++gap > hysteresis) {
            break;
          }
        }

        ActionEvent e;
        e.kind = ActionKind::Screen;
        e.actor = s;
        e.target = d;
        e.start_frame = clip.frames[start].frame_index;
        e.anchor_frame = e.start_frame;
        e.end_frame = clip.frames[g].frame_index;
        e.actor_pos = clip.position(s, start);
        e.target_pos = clip.position(d, start);
        out.push_back(std::move(e));
      }
    }
  }
  std::sort(out.begin(), out.end(), chronological_less);
  return out;
}

std::vector<ActionEvent> detect_all(const Clip& clip, const DetectionParams& params) {
  params.check();
  const PossessionTimeline possession = compute_possession(clip, params);
  const MarkingTimeline marking = compute_marking_timeline(clip, params);
  std::vector<ActionEvent> out = detect_pass(clip, possession);
  for (auto&& part : {detect_shoot(clip, possession), detect_cut(clip, possession, params),
                      detect_screen(clip, possession, marking, params)})
    out.insert(out.end(), part.begin(), part.end());
  std::stable_sort(out.begin(), out.end(), chronological_less);
  return out;
}

}  // namespace courtside
