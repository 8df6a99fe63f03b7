// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <map>

#include "courtside/detection.hpp"
#include "courtside/filtering.hpp"
#include "courtside/overlay.hpp"
#include "support/scenarios.hpp"
#include "support/schema_check.hpp"

namespace courtside {
namespace {

struct Fixture {
  Clip clip;
  std::vector<ActionEvent> actions;
};

Fixture scenario(std::string_view name) {
  for (const auto& sc : testing::detector_scenarios())
    if (sc.name == name) {
      Fixture f;
      f.clip = generate_synthetic_play(sc.script, kDefaultFps, 0.0, 1).clip;
      f.actions = filter_actions(build_intervals(detect_all(f.clip)), {}, f.clip.fps);
      return f;
    }
  throw std::out_of_range(std::string(name));
}

std::map<std::string, int> kind_counts(const std::vector<Primitive>& prims) {
  std::map<std::string, int> out;
  for (const auto& p : prims) ++out[std::string(primitive_kind(p))];
  return out;
}

const ActionEvent& first_of(const std::vector<ActionEvent>& actions, ActionKind kind) {
  for (const auto& e : actions)
    if (e.kind == kind) return e;
  throw std::out_of_range("no such action");
}

TEST(ActionOverlay, PassMarksBothPlayersAndDrawsTheArrow) {
  const Fixture f = scenario("pass-top-to-wing");
  const ActionEvent& pass = first_of(f.actions, ActionKind::Pass);
  const auto prims = overlay_for_action(pass, f.clip);
  EXPECT_EQ(kind_counts(prims),
            (std::map<std::string, int>{{"circle_marker", 2}, {"ground_arrow", 1}, {"path_preview", 2}, {"pause_cue", 1}}));
  const auto& sender = std::get<CircleMarker>(prims[0].shape);
  const auto& receiver = std::get<CircleMarker>(prims[1].shape);
  EXPECT_EQ(sender.player, pass.actor);
  EXPECT_EQ(receiver.role, MarkerRole::Receiver);
  EXPECT_EQ(sender.color, TeamPalette{}.home);
  const auto& arrow = std::get<GroundArrow>(prims[2].shape);
  const std::size_t anchor = *f.clip.frame_pos(pass.anchor_frame);
  EXPECT_EQ(arrow.from, f.clip.position(pass.actor, anchor));
  EXPECT_EQ(arrow.to, f.clip.position(*pass.target, anchor));
  EXPECT_EQ(std::get<PauseCue>(prims.back().shape).frame, pass.anchor_frame);
  // Flash-forward ends 1.5 s after the anchor.
  EXPECT_EQ(prims[0].frame_end, pass.anchor_frame + 38);
}

TEST(ActionOverlay, CutHighlightsTheDestinationAndPreviewsBothPhases) {
  const Fixture f = scenario("corner-cut-and-finish");
  const ActionEvent& cut = first_of(f.actions, ActionKind::Cut);
  const auto prims = overlay_for_action(cut, f.clip);
  EXPECT_EQ(kind_counts(prims),
            (std::map<std::string, int>{{"ground_arrow", 1}, {"area_highlight", 1}, {"path_preview", 2}, {"pause_cue", 1}}));
  const auto& area = std::get<AreaHighlight>(prims[1].shape);
  EXPECT_EQ(area.region, *cut.to_region);
  EXPECT_EQ(area.polygons, f.clip.court.region_polygons(area.region, f.clip.attack_direction));
  EXPECT_EQ(std::get<PathPreview>(prims[2].shape).phase, PreviewPhase::Before);
  EXPECT_EQ(std::get<PathPreview>(prims[3].shape).phase, PreviewPhase::After);
}

TEST(ActionOverlay, ScreenWallFacesTheDefender) {
  const Fixture f = scenario("off-ball-screen-and-cut");
  const ActionEvent screen = first_of(detect_all(f.clip), ActionKind::Screen);
  const auto prims = overlay_for_action(screen, f.clip);
  EXPECT_EQ(kind_counts(prims), (std::map<std::string, int>{{"ground_arrow", 1}, {"screen_wall", 1}, {"pause_cue", 1}}));
  const auto& wall = std::get<ScreenWall>(prims[1].shape);
  EXPECT_NEAR(norm(wall.normal), 1.0, 1e-9);
  const std::size_t anchor = *f.clip.frame_pos(screen.anchor_frame);
  const Point2 toward = f.clip.position(*screen.target, anchor) - wall.pos;
  EXPECT_NEAR(wall.normal.x * toward.x + wall.normal.y * toward.y, norm(toward), 1e-9);
}

TEST(ActionOverlay, ShootAndErrors) {
  const Fixture f = scenario("wing-jumper");
  ActionEvent shot = first_of(f.actions, ActionKind::Shoot);
  EXPECT_EQ(kind_counts(overlay_for_action(shot, f.clip)),
            (std::map<std::string, int>{{"circle_marker", 1}, {"pause_cue", 1}}));
  OverlayOptions bad;
  bad.horizon = 0;
  EXPECT_THROW(overlay_for_action(shot, f.clip, bad), std::invalid_argument);
  ActionEvent ghost = shot;
  ghost.actor = "h9";
  EXPECT_THROW(overlay_for_action(ghost, f.clip), std::invalid_argument);
  ActionEvent late = shot;
  late.anchor_frame = late.start_frame = 100000;
  EXPECT_THROW(overlay_for_action(late, f.clip), std::invalid_argument);
}

TEST(ChatPlacement, BoundingBoxBeatsCourtPosition) {
  Fixture f = scenario("wing-jumper");
  // h2 is on the y > 25 half: below by court position.
  EXPECT_EQ(chat_placement(f.clip, "h2", 0, {}), ChatPlacement::Below);
  f.clip.frames[0].players[1].bbox = BoundingBox{100, 600, 140, 700};
  EXPECT_EQ(chat_placement(f.clip, "h2", 0, {}), ChatPlacement::Above);
  EXPECT_THROW(chat_placement(f.clip, "h2", -5, {}), std::invalid_argument);
}

ExplanationPlan plan_for(const Fixture& f, Perspective p) {
  const GameContext ctx = make_context(f.clip, TacticLabel::PD, "A set.", f.actions, "What happened?");
  ExplanationPlan plan;
  plan.perspective = p;
  plan.summary = "s";
  plan.segments = parse_explanation(fallback_generate(ctx, p).text, p, ctx);
  return plan;
}

TEST(Script, OneEntryPerItemWithGroupedCutAndPass) {
  const Fixture f = scenario("corner-cut-and-finish");
  const OverlayScript script = compile_script(f.actions, plan_for(f, Perspective::Third), f.clip);
  const auto items = group_actions(f.actions);
  ASSERT_EQ(script.entries.size(), items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const OverlayEntry& e = script.entries[i];
    EXPECT_EQ(e.action_index, i);
    EXPECT_EQ(e.events, items[i].events);
    EXPECT_EQ(e.pause_frame, items[i].anchor_frame);
    EXPECT_EQ(kind_counts(e.primitives)["pause_cue"], 1);
    EXPECT_EQ(kind_counts(e.primitives)["chat_anchor"], 0);
  }
  const auto grouped = std::find_if(script.entries.begin(), script.entries.end(),
                                    [](const OverlayEntry& e) { return e.events.size() == 2; });
  ASSERT_NE(grouped, script.entries.end());
  EXPECT_EQ(kind_counts(grouped->primitives)["circle_marker"], 2);
  EXPECT_EQ(kind_counts(grouped->primitives)["area_highlight"], 1);
}

TEST(Script, FirstPersonAddsOneChatAnchorPerSpeaker) {
  const Fixture f = scenario("off-ball-screen-and-cut");
  const ExplanationPlan plan = plan_for(f, Perspective::First);
  const OverlayScript script = compile_script(f.actions, plan, f.clip);
  for (const auto& e : script.entries) {
    std::set<std::string> speakers;
    for (const auto& l : e.segment.lines) speakers.insert(l.speaker);
    EXPECT_EQ(kind_counts(e.primitives)["chat_anchor"], static_cast<int>(speakers.size()));
  }
  ExplanationPlan short_plan = plan;
  short_plan.segments.pop_back();
  EXPECT_THROW(compile_script(f.actions, short_plan, f.clip), std::invalid_argument);
}

TEST(Script, JsonMatchesTheSchema) {
  const auto checker = testing::SchemaChecker::from_file(std::string(COURTSIDE_SCHEMA_DIR) + "/api.schema.json");
  for (const char* name : {"off-ball-screen-and-cut", "corner-cut-and-finish-mirrored", "wing-jumper"})
    for (Perspective p : {Perspective::First, Perspective::Third}) {
      const Fixture f = scenario(name);
      const auto j = to_json(compile_script(f.actions, plan_for(f, p), f.clip));
      const auto errors = checker.check(j, "overlay");
      EXPECT_TRUE(errors.empty()) << name << ": " << (errors.empty() ? "" : errors.front());
    }
}

}  // namespace
}  // namespace courtside
