// SPDX-License-Identifier: Apache-2.0
#include "courtside/plays.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "courtside/tactics.hpp"

namespace courtside {

namespace {

constexpr double kReleaseToHoop = 0.3;
constexpr double kPlayLength = 6.0;
constexpr double kShadowStep = 0.2;

// Offensive path: positions at t = 0, 2, 4, 6 s in the left-attacking half.
using Path = std::array<Point2, 4>;

struct PassStep {
  double release;
  double arrive;
  int to;  // slot
};

struct Template {
  std::array<Path, 5> paths;
  int first_holder;
  std::vector<PassStep> passes;
  double shot;
};

Template template_for(TacticLabel label) {
  switch (label) {
    case TacticLabel::F23:
      return {{{{{{28, 32}, {28, 32}, {24, 38}, {24, 38}}},
                {{{28, 18}, {22, 10}, {22, 10}, {28, 20}}},
                {{{4, 44}, {4, 44}, {8, 20}, {6, 12}}},
                {{{4, 6}, {10, 15}, {10, 15}, {18, 33}}},
                {{{8, 25}, {12, 33}, {18, 17}, {18, 17}}}}},
              0,
              {{1.6, 1.8, 1}, {3.6, 3.8, 2}},
              5.2};
    case TacticLabel::EV:
      return {{{{{{30, 25}, {28, 38}, {26, 40}, {26, 40}}},
                {{{5, 10}, {10, 25}, {24, 25}, {28, 25}}},
                {{{18, 30}, {18, 29}, {18, 27}, {18, 30}}},
                {{{18, 20}, {18, 21}, {18, 23}, {18, 20}}},
                {{{4, 45}, {4, 45}, {10, 44}, {10, 44}}}}},
              0,
              {{4.0, 4.2, 1}},
              5.4};
    case TacticLabel::HK:
      return {{{{{{30, 25}, {24, 38}, {24, 38}, {24, 38}}},
                {{{24, 12}, {26, 20}, {12, 28}, {10, 32}}},
                {{{19, 30}, {22, 20}, {22, 20}, {28, 25}}},
                {{{4, 44}, {4, 44}, {4, 44}, {8, 40}}},
                {{{8, 10}, {8, 10}, {14, 6}, {14, 6}}}}},
              0,
              {{2.4, 2.6, 2}, {4.0, 4.2, 1}},
              5.0};
    case TacticLabel::PD:
      return {{{{{{32, 25}, {30, 25}, {28, 25}, {28, 25}}},
                {{{6, 38}, {8, 36}, {20, 42}, {24, 44}}},
                {{{14, 36}, {8, 36}, {8, 34}, {10, 30}}},
                {{{6, 12}, {8, 14}, {20, 8}, {24, 6}}},
                {{{14, 14}, {8, 14}, {8, 16}, {10, 20}}}}},
              0,
              {{4.2, 4.4, 1}},
              5.4};
    case TacticLabel::PT:
      return {{{{{{30, 25}, {26, 38}, {26, 38}, {20, 36}}},
                {{{24, 12}, {24, 12}, {8, 20}, {10, 32}}},
                {{{19, 25}, {19, 25}, {24, 20}, {24, 20}}},
                {{{24, 40}, {18, 44}, {4, 44}, {4, 44}}},
                {{{4, 6}, {4, 6}, {10, 8}, {18, 10}}}}},
              0,
              {{1.8, 2.0, 2}, {4.6, 4.8, 1}},
              5.5};
    case TacticLabel::RB:
      return {{{{{{34, 25}, {30, 30}, {22, 34}, {14, 32}}},
                {{{20, 25}, {30, 27}, {26, 24}, {12, 26}}},
                {{{4, 44}, {4, 44}, {4, 44}, {4, 44}}},
                {{{22, 8}, {22, 8}, {24, 10}, {24, 10}}},
                {{{6, 12}, {6, 12}, {4, 6}, {4, 6}}}}},
              0,
              {{4.4, 4.6, 1}},
              5.5};
    case TacticLabel::SP:
      return {{{{{{28, 38}, {26, 40}, {20, 36}, {18, 30}}},
                {{{22, 28}, {25, 36}, {14, 32}, {12, 30}}},
                {{{22, 22}, {24, 34}, {28, 32}, {30, 30}}},
                {{{4, 6}, {4, 6}, {4, 6}, {8, 6}}},
                {{{22, 8}, {22, 8}, {22, 10}, {24, 12}}}}},
              0,
              {{4.4, 4.6, 2}},
              5.5};
    case TacticLabel::WS:
      return {{{{{{30, 25}, {24, 12}, {24, 12}, {20, 14}}},
                {{{6, 36}, {10, 32}, {22, 24}, {30, 26}}},
                {{{16, 30}, {12, 30}, {12, 28}, {10, 18}}},
                {{{4, 44}, {4, 44}, {10, 42}, {10, 42}}},
                {{{6, 12}, {6, 12}, {8, 8}, {4, 4}}}}},
              0,
              {{4.6, 4.8, 1}},
              5.5};
    case TacticLabel::WV:
      return {{{{{{30, 40}, {32, 28}, {30, 12}, {24, 10}}},
                {{{30, 25}, {30, 12}, {30, 25}, {32, 36}}},
                {{{30, 10}, {28, 25}, {32, 38}, {28, 26}}},
                {{{4, 44}, {4, 44}, {4, 44}, {4, 44}}},
                {{{6, 10}, {6, 10}, {6, 10}, {6, 10}}}}},
              0,
              {{1.0, 1.2, 1}, {2.6, 2.8, 2}, {4.2, 4.4, 0}},
              5.5};
    case TacticLabel::WW:
      return {{{{{{30, 25}, {24, 38}, {24, 38}, {24, 38}}},
                {{{24, 12}, {20, 18}, {6, 24}, {4, 40}}},
                {{{4, 44}, {10, 40}, {22, 30}, {28, 25}}},
                {{{8, 12}, {8, 12}, {16, 10}, {16, 10}}},
                {{{19, 32}, {19, 32}, {14, 20}, {14, 20}}}}},
              0,
              {{1.8, 2.0, 4}, {4.4, 4.6, 2}},
              5.5};
  }
  throw std::invalid_argument("unknown tactic label");
}

Point2 path_position(const std::vector<Waypoint>& path, double t) {
  if (t <= path.front().time) return path.front().pos;
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (t <= path[k].time) {
      const double span = path[k].time - path[k - 1].time;
      return span > 0 ? lerp(path[k - 1].pos, path[k].pos, (t - path[k - 1].time) / span) : path[k].pos;
    }
  }
  return path.back().pos;
}

Point2 place(Point2 canonical, const PlayVariation& v, const CourtSpec& court) {
  const Point2 shifted = canonical + v.offset;
  return v.direction == AttackDirection::Left ? shifted : court.mirror(shifted);
}

}  // namespace

std::vector<PlayerRef> demo_rosters() {
  return {
      {"h1", "Marcus Hale", TeamSide::Home},    {"h2", "Dion Carter", TeamSide::Home},
      {"h3", "Theo Brandt", TeamSide::Home},    {"h4", "Jalen Moss", TeamSide::Home},
      {"h5", "Victor Okafor", TeamSide::Home},  {"a1", "Ray Lindqvist", TeamSide::Away},
      {"a2", "Omar Feld", TeamSide::Away},      {"a3", "Casey Dunn", TeamSide::Away},
      {"a4", "Nate Ivers", TeamSide::Away},     {"a5", "Leo Santos", TeamSide::Away},
  };
}

void add_shadow_defenders(PlayScript& script, double gap) {
  const CourtSpec court = CourtSpec::standard();
  const Point2 hoop = court.attacked_hoop(script.attack_direction);
  std::vector<PlayerRef> attackers, defenders;
  for (const auto& p : script.rosters) (p.team == script.offense_team ? attackers : defenders).push_back(p);
  if (attackers.size() != defenders.size()) throw std::invalid_argument("shadowing needs equal team sizes");
  for (std::size_t i = 0; i < attackers.size(); ++i) {
    const auto& path = script.waypoints.at(attackers[i].player_id);
    std::vector<Waypoint> shadow;
    const double t_end = path.back().time;
    for (int k = 0;; ++k) {
      const double t = std::min(k * kShadowStep, t_end);
      const Point2 p = path_position(path, t);
      const Point2 to_hoop = hoop - p;
      const double d = norm(to_hoop);
      const double step = std::min({gap, d, std::max(3.0, d / 2.0)});
      shadow.push_back({t, d > 0 ? p + to_hoop * (step / d) : p});
      if (t >= t_end) break;
    }
    script.waypoints[defenders[i].player_id] = std::move(shadow);
  }
}

PlayScript tactic_play(TacticLabel label, const PlayVariation& variation) {
  if (!(variation.time_scale > 0)) throw std::invalid_argument("time scale must be positive");
  const Template tpl = template_for(label);
  const CourtSpec court = CourtSpec::standard();
  const double s = variation.time_scale;

  PlayScript script;
  script.clip_id = fmt::format("tactic-{}", code(label));
  script.rosters = demo_rosters();
  script.offense_team = TeamSide::Home;
  script.attack_direction = variation.direction;
  script.tactic_label = label;
  script.duration = kPlayLength * s;

  for (std::size_t slot = 0; slot < 5; ++slot) {
    std::vector<Waypoint> path;
    for (std::size_t k = 0; k < 4; ++k)
      path.push_back({2.0 * static_cast<double>(k) * s, place(tpl.paths[slot][k], variation, court)});
    script.waypoints[script.rosters[slot].player_id] = std::move(path);
  }
  add_shadow_defenders(script);

  auto id = [&](int slot) { return script.rosters[static_cast<std::size_t>(slot)].player_id; };
  script.ball.push_back({0.0, id(tpl.first_holder)});
  for (const auto& p : tpl.passes) {
    script.ball.push_back({p.release * s, std::nullopt});
    script.ball.push_back({p.arrive * s, id(p.to)});
  }
  script.ball.push_back({tpl.shot * s, std::nullopt});
  script.ball.push_back({(tpl.shot + kReleaseToHoop) * s, std::string(kHoopHolder)});
  return script;
}

ReferenceClip reference_from_clip(const Clip& clip, TacticLabel label, int stride) {
  const TrajectorySet set = normalize_trajectories(clip, stride);
  if (set.size() != 5) throw std::invalid_argument(fmt::format("clip has {} offensive players", set.size()));
  ReferenceClip ref;
  ref.label = label;
  std::copy(set.begin(), set.end(), ref.trajectories.begin());
  return ref;
}

ReferenceSet build_reference_set(const ReferenceBuildParams& params) {
  if (params.per_class < 1) throw std::invalid_argument("per_class must be at least 1");
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> scale(1.0 - params.time_jitter, 1.0 + params.time_jitter);
  std::uniform_real_distribution<double> shift(-params.offset_jitter, params.offset_jitter);
  std::bernoulli_distribution flip(0.5);

  ReferenceSet refs;
  for (TacticLabel label : kAllTactics) {
    for (int i = 0; i < params.per_class; ++i) {
      PlayVariation v;
      v.time_scale = scale(rng);
      v.offset = {shift(rng), shift(rng)};
      v.direction = flip(rng) ? AttackDirection::Right : AttackDirection::Left;
      const std::uint64_t clip_seed = rng();
      const SyntheticPlay play = generate_synthetic_play(tactic_play(label, v), params.fps, params.sigma, clip_seed);
      refs.clips.push_back(reference_from_clip(play.clip, label, params.stride));
    }
  }
  return refs;
}

}  // namespace courtside
