// SPDX-License-Identifier: Apache-2.0
#include "courtside/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace courtside {

void FilterParams::check() const {
  if (!(cut_receive_window > 0 && screen_relevance_radius > 0))
    throw std::invalid_argument("filter parameters must be positive");
}

ActionList build_intervals(std::vector<ActionEvent> events) {
  ActionList list;
  list.events = std::move(events);
  for (std::size_t i = 0; i < list.events.size(); ++i)
    if (is_primary(list.events[i].kind)) list.primaries.push_back(i);

  for (std::size_t p = 0; p < list.primaries.size(); ++p) {
    ActionInterval iv;
    iv.index = p;
    if (p > 0) iv.opening = list.primaries[p - 1];
    iv.closing = list.primaries[p];
    list.intervals.push_back(std::move(iv));
  }

  std::optional<ActionInterval> trailing;
  for (std::size_t i = 0; i < list.events.size(); ++i) {
    const ActionEvent& e = list.events[i];
    if (is_primary(e.kind)) continue;
    auto it = std::find_if(list.primaries.begin(), list.primaries.end(),
                           [&](std::size_t p) { return list.events[p].anchor_frame >= e.anchor_frame; });
    if (it != list.primaries.end()) {
      list.intervals[static_cast<std::size_t>(it - list.primaries.begin())].secondaries.push_back(i);
    } else {
      if (!trailing) {
        trailing.emplace();
        trailing->index = list.intervals.size();
        if (!list.primaries.empty()) trailing->opening = list.primaries.back();
      }
      trailing->secondaries.push_back(i);
    }
  }
  if (trailing) list.intervals.push_back(std::move(*trailing));
  return list;
}

std::vector<FilterDecision> filter_diagnostics(const ActionList& list, const FilterParams& params, double fps) {
  params.check();
  if (!(fps > 0)) throw std::invalid_argument("fps must be positive");
  std::vector<FilterDecision> decisions;
  decisions.reserve(list.events.size());
  for (const auto& e : list.events) decisions.push_back({e, true, is_primary(e.kind) ? "primary" : ""});

  const int receive_frames = static_cast<int>(std::lround(params.cut_receive_window * fps));
  for (const auto& iv : list.intervals) {
    const ActionEvent* opening = iv.opening ? &list.events[*iv.opening] : nullptr;
    const ActionEvent* closing = iv.closing ? &list.events[*iv.closing] : nullptr;
    for (std::size_t idx : iv.secondaries) {
      const ActionEvent& e = list.events[idx];
      FilterDecision& d = decisions[idx];
      if (e.kind == ActionKind::Cut) {
        const bool received = closing != nullptr && closing->kind == ActionKind::Pass && closing->target == e.actor &&
                              closing->anchor_frame <= e.end_frame + receive_frames;
        d.kept = received;
        d.reason = received ? "cutter receives the next pass" : "cut is not followed by a pass to the cutter";
      } else if (e.kind == ActionKind::Screen) {
        std::vector<Point2> anchors;
        if (opening != nullptr && opening->kind == ActionKind::Pass) anchors.push_back(opening->actor_pos);
        if (closing != nullptr) {
          if (closing->kind == ActionKind::Pass && closing->target_pos) anchors.push_back(*closing->target_pos);
          if (closing->kind == ActionKind::Shoot) anchors.push_back(closing->actor_pos);
        }
        const bool relevant = std::any_of(anchors.begin(), anchors.end(), [&](Point2 p) {
          return distance(p, e.actor_pos) <= params.screen_relevance_radius;
        });
        d.kept = relevant;
        d.reason = relevant ? "screen set near an adjacent pass" : "screen too far from adjacent passes";
      }
    }
  }
  return decisions;
}

std::vector<ActionEvent> filter_actions(const ActionList& list, const FilterParams& params, double fps) {
  std::vector<ActionEvent> out;
  for (auto& d : filter_diagnostics(list, params, fps))
    if (d.kept) out.push_back(std::move(d.event));
  return out;
}

nlohmann::json diagnostics_json(const std::vector<FilterDecision>& decisions) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : decisions) {
    auto j = to_json(d.event);
    j["filtered"] = !d.kept;
    j["reason"] = d.reason;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace courtside
