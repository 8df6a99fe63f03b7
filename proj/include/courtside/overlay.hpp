// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "courtside/core.hpp"
#include "courtside/events.hpp"
#include "courtside/narrative.hpp"

namespace courtside {

enum class MarkerRole { Sender, Receiver };
enum class PreviewPhase { Before, After };  // Before renders dashed, After solid
enum class ChatPlacement { Above, Below };

struct CircleMarker {
  std::string player;
  MarkerRole role = MarkerRole::Sender;
  bool rotating = true;
  std::string color;
};

struct GroundArrow {
  Point2 from;
  Point2 to;
  std::string color;
};

struct PathPreview {
  std::string player;
  std::vector<Point2> points;
  PreviewPhase phase = PreviewPhase::After;
  std::string color;
};

struct AreaHighlight {
  RegionId region = RegionId::Key;
  std::vector<Polygon> polygons;  // court coordinates for the clip's attack direction
  std::string color;
};

struct ScreenWall {
  Point2 pos;
  Point2 normal;  // unit vector from screener toward the screened defender
  std::string player;
  std::string color;
};

struct PauseCue {
  int frame = 0;
};

struct ChatAnchor {
  std::string player;
  ChatPlacement placement = ChatPlacement::Above;
};

using PrimitiveShape =
    std::variant<CircleMarker, GroundArrow, PathPreview, AreaHighlight, ScreenWall, PauseCue, ChatAnchor>;

struct Primitive {
  PrimitiveShape shape;
  int frame_start = 0;
  int frame_end = 0;
};

std::string_view primitive_kind(const Primitive& p);

struct TeamPalette {
  std::string home = "#1d4ed8";
  std::string away = "#dc2626";
  std::string before_path = "#2563eb";
  std::string after_path = "#16a34a";
  std::string highlight = "#facc15";

  const std::string& of(TeamSide side) const { return side == TeamSide::Home ? home : away; }
};

struct OverlayOptions {
  double horizon = 1.5;  // flash-forward seconds, > 0
  TeamPalette palette;
  double video_height = 720.0;
};

/// Primitives for one event, PauseCue last. Throws std::invalid_argument when the event does
/// not belong to the clip (unknown player, anchor outside the clip).
std::vector<Primitive> overlay_for_action(const ActionEvent& e, const Clip& clip, const OverlayOptions& options = {});

struct OverlayEntry {
  std::size_t action_index = 0;  // item index, matches Segment::action_index
  std::vector<std::size_t> events;
  int pause_frame = 0;
  std::vector<Primitive> primitives;
  Segment segment;
};

struct OverlayScript {
  std::string clip_id;
  Perspective perspective = Perspective::Third;
  std::vector<OverlayEntry> entries;
};

ChatPlacement chat_placement(const Clip& clip, std::string_view player_id, int frame, const OverlayOptions& options);

/// One entry per action item. Throws std::invalid_argument when the plan's segment count differs
/// from the item count.
OverlayScript compile_script(const std::vector<ActionEvent>& actions, const ExplanationPlan& plan, const Clip& clip,
                             const OverlayOptions& options = {});

nlohmann::json to_json(const Primitive& p);
nlohmann::json to_json(const OverlayScript& script);

}  // namespace courtside
