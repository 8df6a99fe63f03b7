// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "courtside/events.hpp"

namespace courtside {

struct FilterParams {
  double cut_receive_window = 2.0;        // s
  double screen_relevance_radius = 12.0;  // ft

  void check() const;
};

inline bool is_primary(ActionKind kind) { return kind == ActionKind::Pass || kind == ActionKind::Shoot; }

/// Secondary actions between two primaries. Indices refer to ActionList::events.
struct ActionInterval {
  std::size_t index = 0;
  std::optional<std::size_t> opening;  // primary before the interval
  std::optional<std::size_t> closing;  // primary ending the interval; empty for the trailing one
  std::vector<std::size_t> secondaries;
};

struct ActionList {
  std::vector<ActionEvent> events;   // chronological input
  std::vector<std::size_t> primaries;  // Pass / Shoot, in order
  std::vector<ActionInterval> intervals;
};

/// Each Cut / Screen goes to the interval closed by the first primary whose anchor is not
/// earlier than its own; secondaries after the last primary form a trailing open interval.
ActionList build_intervals(std::vector<ActionEvent> events);

struct FilterDecision {
  ActionEvent event;
  bool kept = true;
  std::string reason;
};

/// Per-event keep/drop decisions in input order.
std::vector<FilterDecision> filter_diagnostics(const ActionList& list, const FilterParams& params, double fps);

/// Keeps every primary, keeps a Cut only when the closing pass goes to the cutter within
/// `cut_receive_window` of the cut's end, and keeps a Screen only when it is set within
/// `screen_relevance_radius` of the adjacent pass endpoints.
std::vector<ActionEvent> filter_actions(const ActionList& list, const FilterParams& params, double fps);

/// Actions export with a "filtered" flag per entry (true when dropped).
nlohmann::json diagnostics_json(const std::vector<FilterDecision>& decisions);

}  // namespace courtside
