// SPDX-License-Identifier: Apache-2.0
// Hand-built action lists and random generators shared by the unit and acceptance suites.
#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "courtside/core.hpp"
#include "courtside/events.hpp"
#include "courtside/narrative.hpp"

namespace courtside::testing {

inline ActionEvent pass_event(int anchor, std::string from, std::string to, Point2 from_pos, Point2 to_pos) {
  ActionEvent e;
  e.kind = ActionKind::Pass;
  e.start_frame = anchor;
  e.anchor_frame = anchor;
  e.end_frame = anchor + 5;
  e.actor = std::move(from);
  e.target = std::move(to);
  e.actor_pos = from_pos;
  e.target_pos = to_pos;
  return e;
}

inline ActionEvent shoot_event(int anchor, std::string shooter, Point2 pos) {
  ActionEvent e;
  e.kind = ActionKind::Shoot;
  e.start_frame = anchor;
  e.anchor_frame = anchor;
  e.end_frame = anchor + 8;
  e.actor = std::move(shooter);
  e.actor_pos = pos;
  return e;
}

inline ActionEvent cut_event(int start, int end, std::string cutter, RegionId from, RegionId to, Point2 pos) {
  ActionEvent e;
  e.kind = ActionKind::Cut;
  e.start_frame = start;
  e.anchor_frame = start;
  e.end_frame = end;
  e.actor = std::move(cutter);
  e.from_region = from;
  e.to_region = to;
  e.actor_pos = pos;
  return e;
}

inline ActionEvent screen_event(int start, int anchor, int end, std::string screener, std::string defender,
                                Point2 pos, Point2 defender_pos) {
  ActionEvent e;
  e.kind = ActionKind::Screen;
  e.start_frame = start;
  e.anchor_frame = anchor;
  e.end_frame = end;
  e.actor = std::move(screener);
  e.target = std::move(defender);
  e.actor_pos = pos;
  e.target_pos = defender_pos;
  return e;
}

/// h1 passes to h3 while h2 cuts elsewhere: the cut never feeds the pass.
inline std::vector<ActionEvent> unreceived_cut_case() {
  return {cut_event(10, 30, "h2", RegionId::LeftWing, RegionId::Key, {24, 42}),
          pass_event(40, "h1", "h3", {27, 25}, {24, 8}),
          shoot_event(70, "h3", {24, 8})};
}

/// Screen set 30 ft from the passer before it and the receiver after it.
inline std::vector<ActionEvent> distant_screen_case() {
  return {pass_event(10, "h1", "h2", {27, 25}, {24, 42}),
          screen_event(20, 25, 35, "h5", "a4", {8, 4}, {9, 6}),
          pass_event(45, "h2", "h4", {24, 42}, {8, 44}),
          shoot_event(80, "h4", {8, 44})};
}

/// Names used by seven_action_chain(): two cuts feeding passes, screens on the matchup,
/// a third cut feeding the last pass and the shot.
inline std::vector<PlayerRef> chain_roster() {
  return {{"o1", "Stan Curry", TeamSide::Home},   {"o2", "Klay Thomas", TeamSide::Home},
          {"o3", "Andre Igoe", TeamSide::Home},   {"o4", "Dray Greene", TeamSide::Home},
          {"o5", "Andrew Boget", TeamSide::Home}, {"d1", "Kyrie Irvin", TeamSide::Away},
          {"d2", "J. R. Smithe", TeamSide::Away}, {"d3", "Leon James", TeamSide::Away},
          {"d4", "Kevin Lowe", TeamSide::Away},   {"d5", "Tris Thompkins", TeamSide::Away}};
}

/// Seven numbered items: (Cut o4 Wing -> Top and Pass o1 -> o4), Pass o4 -> o1, Screen o4 -> d4,
/// (Cut o3 Post -> Wing and Pass o1 -> o3), Screen o4 -> d3, (Cut o2 Wing -> Top and Pass o3 -> o2),
/// Shoot o2. Every cut ends within the receive window of the pass to the cutter and every screen
/// stands within 12 ft of an adjacent pass endpoint.
inline std::vector<ActionEvent> seven_action_chain() {
  return {cut_event(5, 20, "o4", RegionId::LeftWing, RegionId::TopOfKey, {24, 40}),
          pass_event(30, "o1", "o4", {26, 30}, {26, 25}),
          pass_event(60, "o4", "o1", {26, 25}, {24, 12}),
          screen_event(70, 75, 85, "o4", "d4", {20, 18}, {19, 17}),
          cut_event(80, 95, "o3", RegionId::LeftLowPost, RegionId::LeftWing, {8, 36}),
          pass_event(100, "o1", "o3", {24, 12}, {22, 38}),
          screen_event(110, 115, 125, "o4", "d3", {20, 30}, {19, 31}),
          cut_event(118, 135, "o2", RegionId::RightWing, RegionId::TopOfKey, {24, 10}),
          pass_event(150, "o3", "o2", {22, 38}, {26, 22}),
          shoot_event(170, "o2", {26, 22})};
}

/// Random chronological action list over offense h1..h5 / defense a1..a5.
inline std::vector<ActionEvent> random_action_list(std::mt19937_64& rng, std::size_t max_len = 14) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> kind(0, 3), player(1, 5), gap(0, 40), dur(3, 30);
  std::uniform_real_distribution<double> x(0, 47), y(0, 50);
  std::uniform_int_distribution<std::size_t> region(0, kRegionCount - 1);
  const auto off = [&] { return "h" + std::to_string(player(rng)); };
  std::vector<ActionEvent> out;
  int t = 0;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    t += gap(rng);
    switch (kind(rng)) {
      case 0: {
        const std::string a = off();
        std::string b = off();
        while (b == a) b = off();
        out.push_back(pass_event(t, a, b, {x(rng), y(rng)}, {x(rng), y(rng)}));
        break;
      }
      case 1:
        out.push_back(cut_event(t, t + dur(rng), off(), kAllRegions[region(rng)], kAllRegions[region(rng)],
                                {x(rng), y(rng)}));
        break;
      case 2:
        out.push_back(screen_event(t, t, t + dur(rng), off(), "a" + std::to_string(player(rng)), {x(rng), y(rng)},
                                   {x(rng), y(rng)}));
        break;
      default:
        out.push_back(shoot_event(t, off(), {x(rng), y(rng)}));
        break;
    }
  }
  std::stable_sort(out.begin(), out.end(), chronological_less);
  return out;
}

/// Random roster with multi-word names, random valid actions and a non-empty description.
inline GameContext random_context(std::mt19937_64& rng) {
  static const std::vector<std::string> first = {"Ann", "Bo", "Cyrus", "Dana", "Eli", "Fay", "Gus", "Hana",
                                                 "Ivo", "Jo", "Kai", "Lena", "Milo", "Nia", "Otto", "Pia"};
  static const std::vector<std::string> last = {"Lee", "Park", "Okoro", "Van Dyke", "Silva", "Moreau",
                                                "O'Neil", "Nakamura", "Ruiz", "Berg", "St. James", "Kowal"};
  std::uniform_int_distribution<std::size_t> fi(0, first.size() - 1), li(0, last.size() - 1);
  GameContext ctx;
  std::vector<std::string> used;
  for (int i = 0; i < 10; ++i) {
    std::string name;
    do {
      name = first[fi(rng)] + " " + last[li(rng)];
    } while (std::find(used.begin(), used.end(), name) != used.end());
    used.push_back(name);
    const bool home = i < 5;
    const std::string id = (home ? "h" : "a") + std::to_string(i % 5 + 1);
    ctx.rosters.push_back({id, name, home ? TeamSide::Home : TeamSide::Away});
    (home ? ctx.offense_players : ctx.defense_players).push_back(name);
  }
  std::uniform_int_distribution<std::size_t> tactic(0, kTacticCount - 1);
  ctx.tactic = kAllTactics[tactic(rng)];
  ctx.tactic_description = "A scripted set. Players rotate through the spots.";

  // Some cuts feed a pass to the cutter, so grouped and single items both appear.
  std::uniform_int_distribution<int> coin(0, 3);
  std::vector<ActionEvent> actions;
  int t = 0;
  std::vector<ActionEvent> drawn;
  while (drawn.empty()) drawn = random_action_list(rng, 10);
  for (const auto& e : drawn) {
    actions.push_back(e);
    actions.back().anchor_frame = actions.back().start_frame = t;
    t += 7;
    if (e.kind == ActionKind::Cut && coin(rng) == 0) {
      std::string from = "h1";
      if (from == e.actor) from = "h2";
      actions.push_back(pass_event(t, from, e.actor, {}, {}));
      t += 7;
    }
  }
  ctx.actions = std::move(actions);
  ctx.actions_text = render_actions_text(ctx.actions, ctx.rosters);
  ctx.question = "What happened?";
  return ctx;
}

}  // namespace courtside::testing
