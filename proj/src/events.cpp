// SPDX-License-Identifier: Apache-2.0
#include "courtside/events.hpp"

#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace courtside {

int kind_order(ActionKind kind) {
  switch (kind) {
    case ActionKind::Pass: return 0;
    case ActionKind::Screen: return 1;
    case ActionKind::Cut: return 2;
    case ActionKind::Shoot: return 3;
  }
  return 4;
}

bool chronological_less(const ActionEvent& a, const ActionEvent& b) {
  return std::forward_as_tuple(a.anchor_frame, kind_order(a.kind), a.actor, a.start_frame) <
         std::forward_as_tuple(b.anchor_frame, kind_order(b.kind), b.actor, b.start_frame);
}

std::optional<std::string> check_event(const ActionEvent& e) {
  if (!(e.start_frame <= e.anchor_frame && e.anchor_frame <= e.end_frame))
    return fmt::format("{} by {}: frames not ordered (start {}, anchor {}, end {})", to_string(e.kind),
                       e.actor, e.start_frame, e.anchor_frame, e.end_frame);
  if (e.actor.empty()) return fmt::format("{}: empty actor", to_string(e.kind));
  if ((e.kind == ActionKind::Pass || e.kind == ActionKind::Screen) && !e.target)
    return fmt::format("{} by {}: missing target", to_string(e.kind), e.actor);
  if (e.kind == ActionKind::Cut) {
    if (!e.from_region || !e.to_region) return fmt::format("Cut by {}: missing regions", e.actor);
    if (*e.from_region == *e.to_region) return fmt::format("Cut by {}: from_region equals to_region", e.actor);
  }
  return std::nullopt;
}

nlohmann::json to_json(const ActionEvent& e) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(e.kind));
  j["start"] = e.start_frame;
  j["end"] = e.end_frame;
  j["anchor"] = e.anchor_frame;
  j["actor"] = e.actor;
  j["target"] = e.target ? nlohmann::json(*e.target) : nlohmann::json(nullptr);
  j["from_region"] = e.from_region ? nlohmann::json(std::string(to_string(*e.from_region))) : nlohmann::json(nullptr);
  j["to_region"] = e.to_region ? nlohmann::json(std::string(to_string(*e.to_region))) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const std::vector<ActionEvent>& events) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : events) arr.push_back(to_json(e));
  return arr;
}

namespace {

std::optional<RegionId> region_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  const auto name = j[key].get<std::string>();
  auto r = parse_region(name);
  if (!r) throw std::invalid_argument(fmt::format("unknown region '{}'", name));
  return r;
}

}  // namespace

ActionEvent event_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("action must be an object");
  ActionEvent e;
  try {
    const auto kind = j.at("kind").get<std::string>();
    auto k = parse_action_kind(kind);
    if (!k) throw std::invalid_argument(fmt::format("unknown action kind '{}'", kind));
    e.kind = *k;
    e.start_frame = j.at("start").get<int>();
    e.end_frame = j.at("end").get<int>();
    e.anchor_frame = j.at("anchor").get<int>();
    e.actor = j.at("actor").get<std::string>();
    if (j.contains("target") && !j["target"].is_null()) e.target = j["target"].get<std::string>();
    e.from_region = region_field(j, "from_region");
    e.to_region = region_field(j, "to_region");
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(fmt::format("malformed action: {}", ex.what()));
  }
  return e;
}

}  // namespace courtside
