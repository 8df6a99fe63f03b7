// SPDX-License-Identifier: Apache-2.0
#include "courtside/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace courtside {

using nlohmann::json;

namespace {

struct FrameSpan {
  std::size_t first = 0;
  std::size_t last = 0;
};

std::size_t require_frame(const Clip& clip, int frame_index, std::string_view what) {
  const auto pos = clip.frame_pos(frame_index);
  if (!pos) throw std::invalid_argument(fmt::format("{} frame {} is not part of clip '{}'", what, frame_index, clip.clip_id));
  return *pos;
}

const PlayerRef& require_player(const Clip& clip, const std::string& id) {
  const PlayerRef* p = clip.player(id);
  if (p == nullptr) throw std::invalid_argument(fmt::format("player '{}' is not in clip '{}'", id, clip.clip_id));
  return *p;
}

std::vector<Point2> path(const Clip& clip, const std::string& id, std::size_t from, std::size_t to) {
  std::vector<Point2> pts;
  for (std::size_t i = from; i <= to; ++i) pts.push_back(clip.position(id, i));
  return pts;
}

Point2 unit(Point2 v, Point2 fallback) {
  const double n = norm(v);
  return n > 1e-9 ? v * (1.0 / n) : fallback;
}

}  // namespace

std::string_view primitive_kind(const Primitive& p) {
  struct Visitor {
    std::string_view operator()(const CircleMarker&) const { return "circle_marker"; }
    std::string_view operator()(const GroundArrow&) const { return "ground_arrow"; }
    std::string_view operator()(const PathPreview&) const { return "path_preview"; }
    std::string_view operator()(const AreaHighlight&) const { return "area_highlight"; }
    std::string_view operator()(const ScreenWall&) const { return "screen_wall"; }
    std::string_view operator()(const PauseCue&) const { return "pause_cue"; }
    std::string_view operator()(const ChatAnchor&) const { return "chat_anchor"; }
  };
  return std::visit(Visitor{}, p.shape);
}

std::vector<Primitive> overlay_for_action(const ActionEvent& e, const Clip& clip, const OverlayOptions& options) {
  if (!(options.horizon > 0.0)) throw std::invalid_argument("flash-forward horizon must be positive");
  if (clip.frames.empty()) throw std::invalid_argument(fmt::format("clip '{}' has no frames", clip.clip_id));
  const PlayerRef& actor = require_player(clip, e.actor);
  const std::size_t anchor = require_frame(clip, e.anchor_frame, "anchor");
  const std::size_t start = std::min(require_frame(clip, e.start_frame, "start"), anchor);
  const std::size_t last = clip.frames.size() - 1;
  const auto horizon_frames = static_cast<std::size_t>(std::lround(options.horizon * clip.fps));
  const std::size_t ahead = std::min(last, anchor + horizon_frames);

  const int f0 = clip.frames[start].frame_index;
  const int f1 = clip.frames[ahead].frame_index;
  std::vector<Primitive> out;
  auto add = [&](PrimitiveShape shape) { out.push_back({std::move(shape), f0, f1}); };
  const TeamPalette& pal = options.palette;

  switch (e.kind) {
    case ActionKind::Pass: {
      if (!e.target) throw std::invalid_argument("pass without a receiver");
      const PlayerRef& receiver = require_player(clip, *e.target);
      add(CircleMarker{actor.player_id, MarkerRole::Sender, true, pal.of(actor.team)});
      add(CircleMarker{receiver.player_id, MarkerRole::Receiver, true, pal.of(receiver.team)});
      add(GroundArrow{clip.position(actor.player_id, anchor), clip.position(receiver.player_id, anchor), pal.of(actor.team)});
      add(PathPreview{actor.player_id, path(clip, actor.player_id, anchor, ahead), PreviewPhase::After, pal.after_path});
      add(PathPreview{receiver.player_id, path(clip, receiver.player_id, anchor, ahead), PreviewPhase::After, pal.after_path});
      break;
    }
    case ActionKind::Cut: {
      const std::size_t end = std::max(anchor, std::min(last, require_frame(clip, e.end_frame, "end")));
      const RegionId to = e.to_region ? *e.to_region
                                      : region_of(clip.position(actor.player_id, end), clip.attack_direction, clip.court);
      add(GroundArrow{clip.position(actor.player_id, start), clip.position(actor.player_id, end), pal.of(actor.team)});
      add(AreaHighlight{to, clip.court.region_polygons(to, clip.attack_direction), pal.highlight});
      add(PathPreview{actor.player_id, path(clip, actor.player_id, start, anchor), PreviewPhase::Before, pal.before_path});
      add(PathPreview{actor.player_id, path(clip, actor.player_id, anchor, ahead), PreviewPhase::After, pal.after_path});
      break;
    }
    case ActionKind::Screen: {
      if (!e.target) throw std::invalid_argument("screen without a screened defender");
      const PlayerRef& defender = require_player(clip, *e.target);
      const Point2 s = clip.position(actor.player_id, anchor);
      const Point2 d = clip.position(defender.player_id, anchor);
      const Point2 toward_hoop = unit(clip.court.attacked_hoop(clip.attack_direction) - s, {1.0, 0.0});
      add(GroundArrow{s, d, pal.of(actor.team)});
      add(ScreenWall{s, unit(d - s, toward_hoop), actor.player_id, pal.of(actor.team)});
      break;
    }
    case ActionKind::Shoot:
      add(CircleMarker{actor.player_id, MarkerRole::Sender, true, pal.of(actor.team)});
      break;
  }
  out.push_back({PauseCue{e.anchor_frame}, e.anchor_frame, e.anchor_frame});
  return out;
}

ChatPlacement chat_placement(const Clip& clip, std::string_view player_id, int frame, const OverlayOptions& options) {
  const std::size_t pos = require_frame(clip, frame, "chat");
  const PlayerSample* sample = clip.frames[pos].find(player_id);
  if (sample == nullptr) throw std::invalid_argument(fmt::format("player '{}' missing at frame {}", player_id, frame));
  if (sample->bbox) return sample->bbox->center().y > options.video_height / 2.0 ? ChatPlacement::Above : ChatPlacement::Below;
  return sample->pos.y < clip.court.width / 2.0 ? ChatPlacement::Above : ChatPlacement::Below;
}

OverlayScript compile_script(const std::vector<ActionEvent>& actions, const ExplanationPlan& plan, const Clip& clip,
                             const OverlayOptions& options) {
  const auto items = group_actions(actions);
  if (items.size() != plan.segments.size())
    throw std::invalid_argument(fmt::format("plan has {} segments for {} actions", plan.segments.size(), items.size()));

  OverlayScript script{clip.clip_id, plan.perspective, {}};
  for (std::size_t i = 0; i < items.size(); ++i) {
    const ActionItem& item = items[i];
    OverlayEntry entry{i, item.events, item.anchor_frame, {}, plan.segments[i]};
    for (std::size_t idx : item.events) {
      auto prims = overlay_for_action(actions[idx], clip, options);
      prims.pop_back();  // the entry carries a single pause at the item anchor
      entry.primitives.insert(entry.primitives.end(), prims.begin(), prims.end());
    }
    entry.primitives.push_back({PauseCue{item.anchor_frame}, item.anchor_frame, item.anchor_frame});

    if (plan.perspective == Perspective::First) {
      std::set<std::string> seen;
      const int end_frame = std::max_element(entry.primitives.begin(), entry.primitives.end(),
                                             [](const Primitive& a, const Primitive& b) { return a.frame_end < b.frame_end; })
                                ->frame_end;
      for (const auto& line : entry.segment.lines) {
        const PlayerRef* p = clip.player_by_name(line.speaker);
        if (p == nullptr || !seen.insert(p->player_id).second) continue;
        entry.primitives.push_back({ChatAnchor{p->player_id, chat_placement(clip, p->player_id, item.anchor_frame, options)},
                                    item.anchor_frame, end_frame});
      }
    }
    script.entries.push_back(std::move(entry));
  }
  return script;
}

namespace {

json point(Point2 p) { return json::array({p.x, p.y}); }

json points(const std::vector<Point2>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point(p));
  return a;
}

}  // namespace

json to_json(const Primitive& p) {
  json j = {{"kind", primitive_kind(p)}, {"frame_start", p.frame_start}, {"frame_end", p.frame_end}};
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CircleMarker>) {
          j["player"] = s.player;
          j["role"] = s.role == MarkerRole::Sender ? "sender" : "receiver";
          j["rotating"] = s.rotating;
          j["color"] = s.color;
        } else if constexpr (std::is_same_v<T, GroundArrow>) {
          j["from"] = point(s.from);
          j["to"] = point(s.to);
          j["color"] = s.color;
        } else if constexpr (std::is_same_v<T, PathPreview>) {
          j["player"] = s.player;
          j["points"] = points(s.points);
          j["phase"] = s.phase == PreviewPhase::Before ? "before" : "after";
          j["dashed"] = s.phase == PreviewPhase::Before;
          j["color"] = s.color;
        } else if constexpr (std::is_same_v<T, AreaHighlight>) {
          j["region"] = to_string(s.region);
          json polys = json::array();
          for (const auto& poly : s.polygons) polys.push_back(points(poly));
          j["polygons"] = std::move(polys);
          j["color"] = s.color;
        } else if constexpr (std::is_same_v<T, ScreenWall>) {
          j["pos"] = point(s.pos);
          j["normal"] = point(s.normal);
          j["player"] = s.player;
          j["color"] = s.color;
        } else if constexpr (std::is_same_v<T, PauseCue>) {
          j["frame"] = s.frame;
        } else {
          j["player"] = s.player;
          j["placement"] = s.placement == ChatPlacement::Above ? "above" : "below";
        }
      },
      p.shape);
  return j;
}

json to_json(const OverlayScript& script) {
  json entries = json::array();
  for (const auto& e : script.entries) {
    json prims = json::array();
    for (const auto& p : e.primitives) prims.push_back(to_json(p));
    entries.push_back({{"action", e.action_index},
                       {"events", e.events},
                       {"pause", e.pause_frame},
                       {"primitives", std::move(prims)},
                       {"segment", to_json(e.segment)}});
  }
  return {{"clip_id", script.clip_id}, {"perspective", to_string(script.perspective)}, {"entries", std::move(entries)}};
}

}  // namespace courtside
