// SPDX-License-Identifier: Apache-2.0
#include "courtside/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace courtside {

using nlohmann::json;

LoadError::LoadError(Kind kind, std::string path, std::optional<int> line, const std::string& message)
    : std::runtime_error(line ? fmt::format("{} (at {}, line {})", message, path.empty() ? "/" : path, *line)
                              : fmt::format("{} (at {})", message, path.empty() ? "/" : path)),
      kind_(kind),
      path_(std::move(path)),
      line_(line) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

int line_of_byte(std::string_view doc, std::size_t byte) {
  byte = std::min(byte, doc.size());
  return 1 + static_cast<int>(std::count(doc.begin(), doc.begin() + static_cast<long>(byte), '\n'));
}

json parse_document(std::string_view document) {
  try {
    return json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw LoadError(LoadError::Kind::Syntax, "", line_of_byte(document, byte), "malformed JSON");
  }
}

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
  throw LoadError(LoadError::Kind::Schema, path, std::nullopt, message);
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path + "/" + key, fmt::format("missing field '{}'", key));
  return *it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_fail(path, "expected a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_fail(path, "expected an integer");
  return j.get<int>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array");
  return j;
}

Point2 as_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_fail(path, "expected [x, y]");
  return {as_number(j[0], path + "/0"), as_number(j[1], path + "/1")};
}

std::optional<BoundingBox> as_bbox(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  const std::string p = path + "/" + key;
  if (!it->is_array() || it->size() != 4) schema_fail(p, "expected [x, y, w, h] or null");
  return BoundingBox{as_number((*it)[0], p), as_number((*it)[1], p), as_number((*it)[2], p),
                     as_number((*it)[3], p)};
}

json point_json(Point2 p) { return json::array({p.x, p.y}); }

json bbox_json(const std::optional<BoundingBox>& b) {
  if (!b) return nullptr;
  return json::array({b->x, b->y, b->w, b->h});
}

void expect_schema(const json& doc, std::string_view expected) {
  const auto schema = as_string(field(doc, "", "schema"), "/schema");
  if (schema != expected)
    schema_fail("/schema", fmt::format("schema version mismatch: expected '{}', got '{}'", expected, schema));
}

std::vector<PlayerRef> parse_rosters(const json& doc) {
  std::vector<PlayerRef> out;
  const auto& arr = as_array(field(doc, "", "rosters"), "/rosters");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = fmt::format("/rosters/{}", i);
    PlayerRef ref;
    ref.player_id = as_string(field(arr[i], p, "player_id"), p + "/player_id");
    ref.full_name = as_string(field(arr[i], p, "full_name"), p + "/full_name");
    const auto team = as_string(field(arr[i], p, "team"), p + "/team");
    auto side = parse_team_side(team);
    if (!side) schema_fail(p + "/team", fmt::format("unknown team '{}', expected home or away", team));
    ref.team = *side;
    out.push_back(std::move(ref));
  }
  return out;
}

json rosters_json(const std::vector<PlayerRef>& rosters) {
  json arr = json::array();
  for (const auto& r : rosters)
    arr.push_back({{"player_id", r.player_id}, {"full_name", r.full_name}, {"team", std::string(to_string(r.team))}});
  return arr;
}

TeamSide parse_side_field(const json& doc, const char* key) {
  const auto text = as_string(field(doc, "", key), fmt::format("/{}", key));
  auto side = parse_team_side(text);
  if (!side) schema_fail(fmt::format("/{}", key), fmt::format("unknown team '{}'", text));
  return *side;
}

AttackDirection parse_direction_field(const json& doc) {
  const auto text = as_string(field(doc, "", "attack_direction"), "/attack_direction");
  auto dir = parse_attack_direction(text);
  if (!dir) schema_fail("/attack_direction", fmt::format("unknown attack_direction '{}'", text));
  return *dir;
}

}  // namespace

json frame_to_json(const TrackedFrame& f) {
  json players = json::array();
  for (const auto& p : f.players) players.push_back({{"id", p.id}, {"pos", point_json(p.pos)}, {"bbox", bbox_json(p.bbox)}});
  return {{"i", f.frame_index}, {"t", f.timestamp}, {"ball", point_json(f.ball)},
          {"ball_bbox", bbox_json(f.ball_bbox)}, {"players", std::move(players)}};
}

json clip_to_json(const Clip& clip) {
  json frames = json::array();
  for (const auto& f : clip.frames) frames.push_back(frame_to_json(f));
  json doc = {{"schema", std::string(kClipSchema)},
              {"clip_id", clip.clip_id},
              {"fps", clip.fps},
              {"offense_team", std::string(to_string(clip.offense_team))},
              {"attack_direction", std::string(to_string(clip.attack_direction))},
              {"rosters", rosters_json(clip.rosters)},
              {"frames", std::move(frames)}};
  if (clip.video_uri) doc["video_uri"] = *clip.video_uri;
  return doc;
}

std::string save_clip(const Clip& clip) { return clip_to_json(clip).dump(); }

Clip load_clip(std::string_view document) {
  const json doc = parse_document(document);
  if (!doc.is_object()) schema_fail("", "clip document must be an object");
  expect_schema(doc, kClipSchema);

  Clip clip;
  clip.clip_id = as_string(field(doc, "", "clip_id"), "/clip_id");
  if (auto it = doc.find("fps"); it != doc.end() && !it->is_null()) clip.fps = as_number(*it, "/fps");
  clip.offense_team = parse_side_field(doc, "offense_team");
  clip.attack_direction = parse_direction_field(doc);
  if (auto it = doc.find("video_uri"); it != doc.end() && !it->is_null()) clip.video_uri = as_string(*it, "/video_uri");
  clip.rosters = parse_rosters(doc);

  const auto& frames = as_array(field(doc, "", "frames"), "/frames");
  clip.frames.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::string p = fmt::format("/frames/{}", i);
    const json& fj = frames[i];
    if (!fj.is_object()) schema_fail(p, fmt::format("frame {}: expected an object", i));
    TrackedFrame f;
    f.frame_index = as_int(field(fj, p, "i"), p + "/i");
    const std::string label = fmt::format("frame {} (i={})", i, f.frame_index);
    auto require = [&](const char* key) -> const json& {
      auto it = fj.find(key);
      if (it == fj.end()) schema_fail(p + "/" + key, fmt::format("{}: missing field '{}'", label, key));
      return *it;
    };
    f.timestamp = as_number(require("t"), p + "/t");
    f.ball = as_point(require("ball"), p + "/ball");
    f.ball_bbox = as_bbox(fj, p, "ball_bbox");
    const auto& players = as_array(require("players"), p + "/players");
    for (std::size_t k = 0; k < players.size(); ++k) {
      const std::string pp = fmt::format("{}/players/{}", p, k);
      PlayerSample s;
      s.id = as_string(field(players[k], pp, "id"), pp + "/id");
      s.pos = as_point(field(players[k], pp, "pos"), pp + "/pos");
      s.bbox = as_bbox(players[k], pp, "bbox");
      f.players.push_back(std::move(s));
    }
    clip.frames.push_back(std::move(f));
  }

  const auto violations = validate_clip(clip);
  if (!violations.empty()) {
    std::string msg = fmt::format("clip '{}' violates {} invariant(s): {}", clip.clip_id, violations.size(), violations.front());
    if (violations.size() > 1) msg += fmt::format("; ... ({} more)", violations.size() - 1);
    throw LoadError(LoadError::Kind::Invariant, "", std::nullopt, msg);
  }
  return clip;
}

// ---- reference sets -------------------------------------------------------

ReferenceSet load_reference_set(std::string_view document) {
  const json doc = parse_document(document);
  if (!doc.is_object()) schema_fail("", "reference document must be an object");
  expect_schema(doc, kReferenceSchema);
  ReferenceSet refs;
  const auto& clips = as_array(field(doc, "", "clips"), "/clips");
  for (std::size_t c = 0; c < clips.size(); ++c) {
    const std::string p = fmt::format("/clips/{}", c);
    ReferenceClip rc;
    const auto label = as_string(field(clips[c], p, "label"), p + "/label");
    auto parsed = parse_tactic(label);
    if (!parsed)
      schema_fail(p + "/label", fmt::format("clip {}: unknown label '{}' (valid: {})", c, label, tactic_code_list()));
    rc.label = *parsed;
    const auto& trajs = as_array(field(clips[c], p, "trajectories"), p + "/trajectories");
    if (trajs.size() != 5)
      schema_fail(p + "/trajectories", fmt::format("clip {}: expected 5 trajectories, got {}", c, trajs.size()));
    for (std::size_t t = 0; t < 5; ++t) {
      const std::string tp = fmt::format("{}/trajectories/{}", p, t);
      const auto& samples = as_array(trajs[t], tp);
      if (samples.empty()) schema_fail(tp, fmt::format("clip {}: trajectory {} is empty", c, t));
      for (std::size_t s = 0; s < samples.size(); ++s) {
        const std::string sp = fmt::format("{}/{}", tp, s);
        const json& sj = samples[s];
        if (!sj.is_array() || sj.size() != 3) schema_fail(sp, "expected [frame, x, y]");
        TrajectorySample smp{as_int(sj[0], sp + "/0"), {as_number(sj[1], sp + "/1"), as_number(sj[2], sp + "/2")}};
        if (!(smp.pos.x >= -0.01 && smp.pos.x <= 1.01 && smp.pos.y >= -0.01 && smp.pos.y <= 1.01))
          schema_fail(sp, fmt::format("clip {}: normalized coordinate ({}, {}) outside [0,1]", c, smp.pos.x, smp.pos.y));
        if (!rc.trajectories[t].samples.empty() && smp.frame <= rc.trajectories[t].samples.back().frame)
          schema_fail(sp, fmt::format("clip {}: trajectory {} frame indices not increasing", c, t));
        rc.trajectories[t].samples.push_back(smp);
      }
    }
    refs.clips.push_back(std::move(rc));
  }
  return refs;
}

std::string save_reference_set(const ReferenceSet& refs) {
  json clips = json::array();
  for (const auto& rc : refs.clips) {
    json trajs = json::array();
    for (const auto& t : rc.trajectories) {
      json samples = json::array();
      for (const auto& s : t.samples) samples.push_back(json::array({s.frame, s.pos.x, s.pos.y}));
      trajs.push_back(std::move(samples));
    }
    clips.push_back({{"label", std::string(code(rc.label))}, {"trajectories", std::move(trajs)}});
  }
  return json{{"schema", std::string(kReferenceSchema)}, {"clips", std::move(clips)}}.dump();
}

// ---- synthetic plays ------------------------------------------------------

void check_script(const PlayScript& script) {
  if (script.rosters.empty() || script.waypoints.empty())
    throw std::invalid_argument("play script is empty");
  std::set<std::string> ids;
  for (const auto& r : script.rosters) {
    if (!ids.insert(r.player_id).second)
      throw std::invalid_argument(fmt::format("duplicate player_id '{}' in script", r.player_id));
    auto it = script.waypoints.find(r.player_id);
    if (it == script.waypoints.end() || it->second.empty())
      throw std::invalid_argument(fmt::format("player '{}' has no waypoints", r.player_id));
  }
  for (const auto& [id, wps] : script.waypoints) {
    if (!ids.contains(id)) throw std::invalid_argument(fmt::format("waypoints for unrostered player '{}'", id));
    for (std::size_t i = 1; i < wps.size(); ++i)
      if (wps[i].time < wps[i - 1].time)
        throw std::invalid_argument(fmt::format("waypoint times of '{}' decrease at index {}", id, i));
  }
  for (std::size_t i = 0; i < script.ball.size(); ++i) {
    const auto& h = script.ball[i];
    if (i > 0 && h.time < script.ball[i - 1].time)
      throw std::invalid_argument(fmt::format("ball schedule times decrease at index {}", i));
    if (h.holder && *h.holder != kHoopHolder && !ids.contains(*h.holder))
      throw std::invalid_argument(fmt::format("ball holder '{}' is not rostered", *h.holder));
  }
  if (script.duration && !(*script.duration >= 0))
    throw std::invalid_argument("script duration must be non-negative");
}

double script_duration(const PlayScript& script) {
  if (script.duration) return *script.duration;
  double end = 0.0;
  for (const auto& [id, wps] : script.waypoints)
    if (!wps.empty()) end = std::max(end, wps.back().time);
  for (const auto& h : script.ball) end = std::max(end, h.time);
  return end;
}

namespace {

Point2 waypoint_position(const std::vector<Waypoint>& wps, double t) {
  if (t <= wps.front().time) return wps.front().pos;
  if (t >= wps.back().time) return wps.back().pos;
  auto it = std::upper_bound(wps.begin(), wps.end(), t, [](double v, const Waypoint& w) { return v < w.time; });
  const Waypoint& b = *it;
  const Waypoint& a = *(it - 1);
  const double span = b.time - a.time;
  if (span <= 0) return b.pos;
  return lerp(a.pos, b.pos, (t - a.time) / span);
}

class BallModel {
 public:
  BallModel(const PlayScript& script, const CourtSpec& court)
      : script_(script), hoop_(court.attacked_hoop(script.attack_direction)), center_{court.length / 2, court.width / 2} {}

  Point2 at(double t) const {
    const auto& sched = script_.ball;
    if (sched.empty()) return center_;
    // Last entry at or before t; before the schedule starts the first entry applies.
    std::size_t cur = 0;
    for (std::size_t i = 0; i < sched.size(); ++i)
      if (sched[i].time <= t) cur = i;
    if (sched[cur].holder) return held(*sched[cur].holder, t);

    // In flight: from the last holder's release point to the next holder's catch point.
    std::size_t release = cur;
    while (release > 0 && !sched[release - 1].holder) --release;
    std::optional<std::size_t> prev_holder;
    if (release > 0) prev_holder = release - 1;
    std::optional<std::size_t> next_holder;
    for (std::size_t i = cur + 1; i < sched.size(); ++i)
      if (sched[i].holder) {
        next_holder = i;
        break;
      }
    const double t0 = sched[release].time;
    const Point2 from = prev_holder ? held(*sched[*prev_holder].holder, t0) : center_;
    if (!next_holder) return from;
    const double t1 = sched[*next_holder].time;
    const Point2 to = held(*sched[*next_holder].holder, t1);
    if (t1 <= t0) return to;
    return lerp(from, to, std::clamp((t - t0) / (t1 - t0), 0.0, 1.0));
  }

 private:
  Point2 held(const std::string& holder, double t) const {
    if (holder == kHoopHolder) return hoop_;
    const Point2 p = waypoint_position(script_.waypoints.at(holder), t);
    const Point2 to_hoop = hoop_ - p;
    const double d = norm(to_hoop);
    if (d <= 1.0) return hoop_;
    return p + to_hoop * (1.0 / d);
  }

  const PlayScript& script_;
  Point2 hoop_;
  Point2 center_;
};

Point2 clamp_to_court(Point2 p, const CourtSpec& court) {
  const double tol = court.bounds_tolerance;
  return {std::clamp(p.x, -tol, court.length + tol), std::clamp(p.y, -tol, court.width + tol)};
}

}  // namespace

SyntheticPlay generate_synthetic_play(const PlayScript& script, double fps, double noise_sigma, std::uint64_t seed) {
  check_script(script);
  if (!(fps > 0)) throw std::invalid_argument("fps must be positive");
  if (!(noise_sigma >= 0)) throw std::invalid_argument("noise_sigma must be non-negative");

  SyntheticPlay out;
  Clip& clip = out.clip;
  clip.clip_id = script.clip_id;
  clip.fps = fps;
  clip.rosters = script.rosters;
  clip.offense_team = script.offense_team;
  clip.attack_direction = script.attack_direction;

  const double duration = script_duration(script);
  // Small epsilon so a duration that is an exact multiple of the frame period keeps its last frame.
  const int last = static_cast<int>(std::floor(duration * fps + 1e-9));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto jitter = [&](Point2 p) {
    if (noise_sigma == 0.0) return p;
    const double dx = gauss(rng) * noise_sigma;
    const double dy = gauss(rng) * noise_sigma;
    return clamp_to_court({p.x + dx, p.y + dy}, clip.court);
  };

  const BallModel ball(script, clip.court);
  clip.frames.reserve(static_cast<std::size_t>(last) + 1);
  for (int i = 0; i <= last; ++i) {
    const double t = i / fps;
    TrackedFrame f;
    f.frame_index = i;
    f.timestamp = t;
    for (const auto& r : script.rosters)
      f.players.push_back({r.player_id, jitter(waypoint_position(script.waypoints.at(r.player_id), t)), std::nullopt});
    f.ball = jitter(ball.at(t));
    clip.frames.push_back(std::move(f));
  }
  out.events = script.expected_events;
  return out;
}

PlayScript load_play_script(std::string_view document) {
  const json doc = parse_document(document);
  if (!doc.is_object()) schema_fail("", "script document must be an object");
  expect_schema(doc, kScriptSchema);
  PlayScript s;
  s.clip_id = as_string(field(doc, "", "clip_id"), "/clip_id");
  s.offense_team = parse_side_field(doc, "offense_team");
  s.attack_direction = parse_direction_field(doc);
  s.rosters = parse_rosters(doc);
  if (auto it = doc.find("duration"); it != doc.end() && !it->is_null()) s.duration = as_number(*it, "/duration");
  if (auto it = doc.find("tactic"); it != doc.end() && !it->is_null()) {
    const auto label = as_string(*it, "/tactic");
    auto parsed = parse_tactic(label);
    if (!parsed) schema_fail("/tactic", fmt::format("unknown label '{}' (valid: {})", label, tactic_code_list()));
    s.tactic_label = parsed;
  }
  const json& wps = field(doc, "", "waypoints");
  if (!wps.is_object()) schema_fail("/waypoints", "expected an object keyed by player_id");
  for (const auto& [id, arr] : wps.items()) {
    const std::string p = "/waypoints/" + id;
    auto& list = s.waypoints[id];
    for (std::size_t i = 0; i < as_array(arr, p).size(); ++i) {
      const json& w = arr[i];
      const std::string wp = fmt::format("{}/{}", p, i);
      if (!w.is_array() || w.size() != 3) schema_fail(wp, "expected [t, x, y]");
      list.push_back({as_number(w[0], wp + "/0"), {as_number(w[1], wp + "/1"), as_number(w[2], wp + "/2")}});
    }
  }
  if (auto it = doc.find("ball"); it != doc.end()) {
    const auto& arr = as_array(*it, "/ball");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string bp = fmt::format("/ball/{}", i);
      if (!arr[i].is_array() || arr[i].size() != 2) schema_fail(bp, "expected [t, holder|null]");
      BallHandoff h{as_number(arr[i][0], bp + "/0"), std::nullopt};
      if (!arr[i][1].is_null()) h.holder = as_string(arr[i][1], bp + "/1");
      s.ball.push_back(std::move(h));
    }
  }
  if (auto it = doc.find("expected_events"); it != doc.end()) {
    const auto& arr = as_array(*it, "/expected_events");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      try {
        s.expected_events.push_back(event_from_json(arr[i]));
      } catch (const std::invalid_argument& e) {
        schema_fail(fmt::format("/expected_events/{}", i), e.what());
      }
    }
  }
  try {
    check_script(s);
  } catch (const std::invalid_argument& e) {
    throw LoadError(LoadError::Kind::Invariant, "", std::nullopt, e.what());
  }
  return s;
}

std::string save_play_script(const PlayScript& s) {
  json wps = json::object();
  for (const auto& [id, list] : s.waypoints) {
    json arr = json::array();
    for (const auto& w : list) arr.push_back(json::array({w.time, w.pos.x, w.pos.y}));
    wps[id] = std::move(arr);
  }
  json ball = json::array();
  for (const auto& h : s.ball) ball.push_back(json::array({h.time, h.holder ? json(*h.holder) : json(nullptr)}));
  json doc = {{"schema", std::string(kScriptSchema)},
              {"clip_id", s.clip_id},
              {"offense_team", std::string(to_string(s.offense_team))},
              {"attack_direction", std::string(to_string(s.attack_direction))},
              {"rosters", rosters_json(s.rosters)},
              {"waypoints", std::move(wps)},
              {"ball", std::move(ball)},
              {"expected_events", to_json(s.expected_events)}};
  if (s.duration) doc["duration"] = *s.duration;
  if (s.tactic_label) doc["tactic"] = std::string(code(*s.tactic_label));
  return doc.dump(2);
}

// ---- CSV ------------------------------------------------------------------

std::string_view to_string(ColumnType type) {
  switch (type) {
    case ColumnType::Int: return "int";
    case ColumnType::Float: return "float";
    case ColumnType::String: return "string";
  }
  return "?";
}

std::optional<std::size_t> StatsTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return i;
  return std::nullopt;
}

namespace {

std::vector<std::vector<std::string>> parse_csv_records(std::string_view doc) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_record = [&] {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
    record.clear();
    field.clear();
    field_started = false;
  };
  if (doc.substr(0, 3) == "\xEF\xBB\xBF") i = 3;  // UTF-8 BOM
  for (; i < doc.size(); ++i) {
    const char c = doc[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < doc.size() && doc[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' && i + 1 < doc.size() && doc[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      if (!field_started && record.empty()) continue;  // blank line
      end_record();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (in_quotes) throw LoadError(LoadError::Kind::Syntax, fmt::format("row {}", records.size() + 1), std::nullopt, "unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

std::optional<std::int64_t> parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) return std::nullopt;
  return v;
}

std::optional<double> parse_float(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

StatsTable load_stats_table(std::string_view document) {
  auto records = parse_csv_records(document);
  if (records.empty()) throw LoadError(LoadError::Kind::Schema, "row 1", 1, "missing header row");
  StatsTable table;
  for (auto& name : records.front()) table.columns.push_back({std::move(name), ColumnType::String});
  const std::size_t arity = table.columns.size();
  for (std::size_t r = 1; r < records.size(); ++r)
    if (records[r].size() != arity)
      throw LoadError(LoadError::Kind::Schema, fmt::format("row {}", r + 1), static_cast<int>(r + 1),
                      fmt::format("row {}: expected {} fields, got {}", r + 1, arity, records[r].size()));

  const std::size_t n_rows = records.size() - 1;
  for (std::size_t c = 0; c < arity; ++c) {
    bool all_int = n_rows > 0;
    bool all_float = n_rows > 0;
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& s = records[r][c];
      if (all_int && !parse_int(s)) all_int = false;
      if (all_float && !parse_float(s)) all_float = false;
    }
    table.columns[c].type = all_int ? ColumnType::Int : all_float ? ColumnType::Float : ColumnType::String;
  }
  table.rows.reserve(n_rows);
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<Cell> row;
    row.reserve(arity);
    for (std::size_t c = 0; c < arity; ++c) {
      auto& s = records[r][c];
      switch (table.columns[c].type) {
        case ColumnType::Int: row.emplace_back(*parse_int(s)); break;
        case ColumnType::Float: row.emplace_back(*parse_float(s)); break;
        case ColumnType::String: row.emplace_back(std::move(s)); break;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace courtside
