// SPDX-License-Identifier: Apache-2.0
#include "courtside/service.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

#include <httplib.h>
#include <fmt/format.h>

#include "courtside/detection.hpp"

namespace courtside {

namespace fs = std::filesystem;
using nlohmann::json;

ClipAnalysis analyze_clip(Clip clip, const ReferenceSet* refs, const PipelineParams& params) {
  ClipAnalysis a;
  a.detected = detect_all(clip, params.detection);
  const ActionList list = build_intervals(a.detected);
  a.decisions = filter_diagnostics(list, params.filter, clip.fps);
  a.filtered = filter_actions(list, params.filter, clip.fps);
  if (refs != nullptr && !refs->clips.empty())
    a.tactic = knn_classify(normalize_trajectories(clip), *refs, params.k, params.distance);
  a.clip = std::move(clip);
  return a;
}

namespace {

json clip_summary(const Clip& c) {
  json j = {{"clip_id", c.clip_id},
            {"fps", c.fps},
            {"frame_count", c.frames.size()},
            {"offense_team", to_string(c.offense_team)},
            {"attack_direction", to_string(c.attack_direction)},
            {"video_uri", c.video_uri ? json(*c.video_uri) : json(nullptr)}};
  if (!c.frames.empty()) {
    j["first_frame"] = c.frames.front().frame_index;
    j["last_frame"] = c.frames.back().frame_index;
    j["duration"] = c.frames.back().timestamp - c.frames.front().timestamp;
  }
  return j;
}

}  // namespace

json analysis_json(const ClipAnalysis& a) {
  json j = clip_summary(a.clip);
  json roster = json::array();
  for (const auto& p : a.clip.rosters)
    roster.push_back({{"player_id", p.player_id}, {"full_name", p.full_name}, {"team", to_string(p.team)}});
  j["rosters"] = std::move(roster);
  j["actions"] = diagnostics_json(a.decisions);
  j["filtered"] = to_json(a.filtered);
  j["tactic"] = a.tactic ? to_json(*a.tactic) : json(nullptr);
  return j;
}

ChatFactory make_chat_factory(const ChatConfig& chat) {
  if (chat.mode == ChatMode::Mock) {
    auto script = std::make_shared<const json>(json::parse(read_file(chat.script.string())));
    ScriptedChatClient probe(*script);  // fail at startup on a malformed rule file
    return [script] { return std::make_unique<ScriptedChatClient>(*script); };
  }
  RemoteChatConfig remote{chat.endpoint, chat.model, chat.key, chat.timeout};
  return [remote] { return make_remote_chat_client(remote); };
}

ServiceData load_service_data(const AppConfig& config) {
  ServiceData d;
  if (!fs::is_directory(config.clips_dir))
    throw std::runtime_error(fmt::format("clips directory '{}' does not exist", config.clips_dir.string()));
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config.clips_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      d.clips.push_back(load_clip(read_file(f.string())));
    } catch (const LoadError& e) {
      throw LoadError(e.kind(), e.path(), e.line(), fmt::format("{}: {}", f.string(), e.what()));
    }
  }
  d.references = load_reference_set(read_file(config.reference_path.string()));
  d.descriptions = load_tactic_descriptions(read_file(config.tactic_descriptions_path.string()));
  if (fs::exists(config.stats_path)) d.stats = load_stats_table(read_file(config.stats_path.string()));
  if (fs::exists(config.tools_fixture_path)) d.extra_tools = load_fixture_tools(read_file(config.tools_fixture_path.string()));
  return d;
}

namespace {

HttpResponse reply(int status, const json& body) { return {status, body.dump(), std::string(kMediaType)}; }

HttpResponse error(int status, std::string_view code, const std::string& message, json extra = json::object()) {
  json e = {{"status", status}, {"code", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) e[k] = v;
  return reply(status, {{"error", std::move(e)}});
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = i;
    while (j < path.size() && path[j] != '/') ++j;
    if (j > i) parts.push_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::optional<int> parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

HttpResponse bad_perspective(const std::string& given) {
  return error(422, "invalid_perspective", fmt::format("perspective '{}' is not one of: first, third", given),
               {{"allowed", {"first", "third"}}});
}

}  // namespace

Service::Service(const AppConfig& config, ServiceData data, ChatFactory chat)
    : config_(config), descriptions_(std::move(data.descriptions)), chat_(std::move(chat)) {
  if (data.references.clips.empty()) throw std::invalid_argument("service needs a non-empty reference set");
  const PipelineParams params{config.detection, config.filter, config.distance, config.knn_k};
  for (auto& clip : data.clips) {
    if (index_.count(clip.clip_id)) throw std::invalid_argument(fmt::format("duplicate clip id '{}'", clip.clip_id));
    index_.emplace(clip.clip_id, analyses_.size());
    analyses_.push_back(analyze_clip(std::move(clip), &data.references, params));
  }
  if (data.stats) tools_.add(std::make_shared<StatsTool>(std::move(*data.stats)));
  for (auto& t : data.extra_tools) tools_.add(std::move(t));
}

const ClipAnalysis* Service::analysis(std::string_view clip_id) const {
  auto it = index_.find(clip_id);
  return it == index_.end() ? nullptr : &analyses_[it->second];
}

HttpResponse Service::handle(const HttpRequest& r) const {
  const auto parts = split_path(r.path);
  if (parts.empty() || parts[0] != "api") return error(404, "not_found", fmt::format("no route for '{}'", r.path));
  auto only = [&](std::string_view method) { return r.method == method; };
  auto not_allowed = [&] { return error(405, "method_not_allowed", fmt::format("{} not allowed on '{}'", r.method, r.path)); };

  if (parts.size() == 2 && parts[1] == "health") return only("GET") ? health() : not_allowed();
  if (parts.size() == 3 && parts[1] == "stats" && parts[2] == "ask") return only("POST") ? stats_ask(r) : not_allowed();
  if (parts.size() >= 2 && parts[1] == "clips") {
    if (parts.size() == 2) return only("GET") ? list_clips() : not_allowed();
    const ClipAnalysis* a = analysis(parts[2]);
    if (a == nullptr) return error(404, "unknown_clip", fmt::format("no clip with id '{}'", parts[2]));
    if (parts.size() == 3) return only("GET") ? clip_detail(*a) : not_allowed();
    if (parts.size() == 4) {
      if (parts[3] == "frames") return only("GET") ? frames(*a, r) : not_allowed();
      if (parts[3] == "overlay") return only("GET") ? overlay(*a, r) : not_allowed();
      if (parts[3] == "ask") return only("POST") ? ask(*a, r) : not_allowed();
    }
  }
  return error(404, "not_found", fmt::format("no route for '{}'", r.path));
}

HttpResponse Service::health() const {
  return reply(200, {{"status", "ok"}, {"clips", analyses_.size()}, {"tools", tools_.names()}});
}

HttpResponse Service::list_clips() const {
  json clips = json::array();
  for (const auto& a : analyses_) {
    json j = clip_summary(a.clip);
    j["tactic"] = a.tactic ? json(code(a.tactic->label)) : json(nullptr);
    j["action_count"] = a.filtered.size();
    clips.push_back(std::move(j));
  }
  return reply(200, {{"clips", std::move(clips)}});
}

HttpResponse Service::clip_detail(const ClipAnalysis& a) const { return reply(200, analysis_json(a)); }

HttpResponse Service::frames(const ClipAnalysis& a, const HttpRequest& r) const {
  const auto& fr = a.clip.frames;
  int from = fr.empty() ? 0 : fr.front().frame_index;
  int to = fr.empty() ? 0 : fr.back().frame_index;
  for (auto [key, target] : {std::pair{"from", &from}, std::pair{"to", &to}}) {
    if (auto it = r.query.find(key); it != r.query.end()) {
      const auto v = parse_int(it->second);
      if (!v) return error(422, "invalid_range", fmt::format("'{}' must be an integer frame index", key));
      *target = *v;
    }
  }
  if (from > to) return error(422, "invalid_range", fmt::format("from ({}) is after to ({})", from, to));
  json out = json::array();
  for (const auto& f : fr)
    if (f.frame_index >= from && f.frame_index <= to) out.push_back(frame_to_json(f));
  return reply(200, {{"clip_id", a.clip.clip_id}, {"fps", a.clip.fps}, {"from", from}, {"to", to}, {"frames", std::move(out)}});
}

HttpResponse Service::overlay(const ClipAnalysis& a, const HttpRequest& r) const {
  std::string given = "third";
  if (auto it = r.query.find("perspective"); it != r.query.end()) given = it->second;
  const auto perspective = parse_perspective(given);
  if (!perspective) return bad_perspective(given);
  const GameContext ctx = make_context(a.clip, a.tactic->label, descriptions_.at(a.tactic->label), a.filtered, "");
  const FallbackText text = fallback_generate(ctx, *perspective);
  ExplanationPlan plan{text.summary, parse_explanation(text.text, *perspective, ctx), *perspective, true, 0};
  return reply(200, to_json(compile_script(a.filtered, plan, a.clip, config_.overlay)));
}

HttpResponse Service::ask(const ClipAnalysis& a, const HttpRequest& r) const {
  json body;
  try {
    body = json::parse(r.body);
  } catch (const json::parse_error& e) {
    return error(422, "invalid_body", fmt::format("body is not JSON: {}", e.what()));
  }
  if (!body.is_object()) return error(422, "invalid_body", "body must be a JSON object");
  if (!body.contains("question") || !body["question"].is_string() || body["question"].get<std::string>().empty())
    return error(422, "invalid_question", "'question' must be a non-empty string");
  std::string given = "third";
  if (body.contains("perspective")) {
    if (!body["perspective"].is_string()) return bad_perspective(body["perspective"].dump());
    given = body["perspective"].get<std::string>();
  }
  const auto perspective = parse_perspective(given);
  if (!perspective) return bad_perspective(given);

  const std::string question = body["question"].get<std::string>();
  const GameContext ctx =
      make_context(a.clip, a.tactic->label, descriptions_.at(a.tactic->label), a.filtered, question);
  auto client = chat_();
  ExplanationPlan plan;
  try {
    plan = answer_tactic_question(ctx, *perspective, *client,
                                  {config_.chat.retries, config_.chat.fallback, config_.chat.timeout});
  } catch (const NarrativeError& e) {
    return error(502, "chat_failed", e.what());
  }
  json out = to_json(plan);
  out["clip_id"] = a.clip.clip_id;
  out["question"] = question;
  out["overlay"] = to_json(compile_script(a.filtered, plan, a.clip, config_.overlay));
  out["tactic"] = to_json(*a.tactic);
  return reply(200, out);
}

HttpResponse Service::stats_ask(const HttpRequest& r) const {
  json body;
  try {
    body = json::parse(r.body);
  } catch (const json::parse_error& e) {
    return error(422, "invalid_body", fmt::format("body is not JSON: {}", e.what()));
  }
  if (!body.is_object() || !body.contains("question") || !body["question"].is_string() ||
      body["question"].get<std::string>().empty())
    return error(422, "invalid_question", "'question' must be a non-empty string");
  if (tools_.empty()) return error(503, "no_tools", "no stats table or search tools are configured");
  auto client = chat_();
  try {
    ReactResult res = run_react(body["question"].get<std::string>(), tools_, *client, {8, config_.chat.timeout});
    return reply(200, {{"answer", res.answer}, {"trace", to_json(res.trace)}});
  } catch (const ReactError& e) {
    return error(502, to_string(e.kind()), e.what(), {{"trace", to_json(e.trace())}});
  }
}

void Service::serve() const {
  const auto colon = config_.listen.rfind(':');
  if (colon == std::string::npos) throw ConfigError(fmt::format("listen '{}' is not host:port", config_.listen));
  const std::string host = config_.listen.substr(0, colon);
  const auto port = parse_int(config_.listen.substr(colon + 1));
  if (!port || *port <= 0 || *port > 65535) throw ConfigError(fmt::format("listen '{}' has a bad port", config_.listen));

  httplib::Server server;
  auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    const HttpResponse out = handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server.Get(R"(/api/.*)", bridge);
  server.Post(R"(/api/.*)", bridge);
  if (fs::is_directory(config_.static_dir)) server.set_mount_point("/", config_.static_dir.string());
  fmt::print(stderr, "serving {} clips on http://{}:{}\n", analyses_.size(), host, *port);
  if (!server.listen(host, *port)) throw std::runtime_error(fmt::format("cannot listen on {}", config_.listen));
}

}  // namespace courtside
