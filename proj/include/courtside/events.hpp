// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "courtside/core.hpp"

namespace courtside {

/// One detected Pass / Cut / Screen / Shoot.
///
/// `target` is the pass receiver or the screened defender. Positions are sampled at the
/// anchor frame. Frames are frame_index values, not positions in the frame vector.
struct ActionEvent {
  ActionKind kind = ActionKind::Pass;
  int start_frame = 0;
  int end_frame = 0;
  int anchor_frame = 0;
  std::string actor;
  std::optional<std::string> target;
  std::optional<RegionId> from_region;
  std::optional<RegionId> to_region;
  Point2 actor_pos;
  std::optional<Point2> target_pos;

  friend bool operator==(const ActionEvent&, const ActionEvent&) = default;
};

/// Sort key order used when events share an anchor frame.
int kind_order(ActionKind kind);
/// Chronological order: anchor frame, then Pass < Screen < Cut < Shoot, then actor.
bool chronological_less(const ActionEvent& a, const ActionEvent& b);

/// Empty when the kind-specific fields are consistent, otherwise a description.
std::optional<std::string> check_event(const ActionEvent& e);

/// Actions export object: kind, start, end, anchor, actor, target, from_region, to_region.
nlohmann::json to_json(const ActionEvent& e);
/// Inverse of to_json; positions are not part of the export and stay zero / empty.
/// Throws std::invalid_argument on malformed input.
ActionEvent event_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<ActionEvent>& events);

}  // namespace courtside
