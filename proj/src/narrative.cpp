// SPDX-License-Identifier: Apache-2.0
#include "courtside/narrative.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "courtside/ingestion.hpp"
#include "prompt_templates.hpp"

namespace courtside {

using nlohmann::json;

std::string_view to_string(Perspective p) { return p == Perspective::First ? "first" : "third"; }

std::optional<Perspective> parse_perspective(std::string_view text) {
  if (text == "first") return Perspective::First;
  if (text == "third") return Perspective::Third;
  return std::nullopt;
}

std::string_view to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::CountMismatch: return "count_mismatch";
    case ParseError::Kind::UnknownSpeaker: return "unknown_speaker";
    case ParseError::Kind::EmptyText: return "empty_text";
    case ParseError::Kind::ShootLineCount: return "shoot_line_count";
  }
  return "unknown";
}

const std::vector<std::string>& ReasonCatalog::cut() {
  static const std::vector<std::string> list = {"create scoring opportunities", "disturb the defense",
                                                "enhance ball movement", "space the floor",
                                                "implement offensive strategy"};
  return list;
}

const std::vector<std::string>& ReasonCatalog::pass() {
  static const std::vector<std::string> list = {"Create Better Scoring Opportunities", "Control the Pace of the Game",
                                                "Enhance Team Play", "Overcome Tight Defense",
                                                "Improve Court Vision and Awareness"};
  return list;
}

const std::vector<std::string>& ReasonCatalog::screen() {
  static const std::vector<std::string> list = {"Disrupt Defensive Schemes", "Force Defensive Adjustments",
                                                "Diversify Offensive Strategies", "Creating space for other players"};
  return list;
}

std::vector<ActionItem> group_actions(const std::vector<ActionEvent>& actions) {
  std::vector<ActionItem> items;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const ActionEvent& e = actions[i];
    if (e.kind == ActionKind::Cut && i + 1 < actions.size() && actions[i + 1].kind == ActionKind::Pass &&
        actions[i + 1].target == e.actor) {
      items.push_back({{i, i + 1}, ActionKind::Cut, e.anchor_frame});
      ++i;
      continue;
    }
    items.push_back({{i}, e.kind, e.anchor_frame});
  }
  return items;
}

namespace {

const std::string& name_of(const std::vector<PlayerRef>& rosters, const std::string& id) {
  for (const auto& p : rosters)
    if (p.player_id == id) return p.full_name;
  throw std::invalid_argument(fmt::format("unknown player id '{}'", id));
}

std::string describe(const ActionEvent& e, const std::vector<PlayerRef>& rosters) {
  const std::string& actor = name_of(rosters, e.actor);
  switch (e.kind) {
    case ActionKind::Pass:
      return fmt::format("Pass {} -> {}", actor, name_of(rosters, e.target.value_or("")));
    case ActionKind::Screen:
      return fmt::format("Screen {} -> {}", actor, name_of(rosters, e.target.value_or("")));
    case ActionKind::Cut:
      return fmt::format("Cut {} {} -> {}", actor, e.from_region ? area_name(*e.from_region) : "?",
                         e.to_region ? area_name(*e.to_region) : "?");
    case ActionKind::Shoot:
      return fmt::format("Shoot {}", actor);
  }
  return {};
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string fill(std::string_view tpl, const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(tpl.size() + 512);
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      const auto close = tpl.find('}', i);
      if (close != std::string_view::npos) {
        auto it = slots.find(std::string(tpl.substr(i + 1, close - i - 1)));
        if (it != slots.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tpl[i++];
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string normalize_breaks(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == 'n') {
      out += '\n';
      ++i;
    } else if (text[i] != '\r') {
      out += text[i];
    }
  }
  return out;
}

// Blocks are separated by whitespace-only lines; each block keeps its non-blank lines.
std::vector<std::vector<std::string>> split_blocks(std::string_view text) {
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::string> current;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(std::move(t));
    }
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  return blocks;
}

const std::string& pick(const std::vector<std::string>& list, std::size_t index) { return list[index % list.size()]; }

}  // namespace

std::string render_actions_text(const std::vector<ActionEvent>& actions, const std::vector<PlayerRef>& rosters) {
  std::vector<std::string> lines;
  std::size_t n = 0;
  for (const auto& item : group_actions(actions)) {
    std::vector<std::string> parts;
    for (std::size_t idx : item.events) parts.push_back(describe(actions[idx], rosters));
    lines.push_back(fmt::format("{}.  {}", ++n, join(parts, " and ")));
  }
  return join(lines, "\n");
}

GameContext make_context(const Clip& clip, TacticLabel tactic, std::string tactic_description,
                         std::vector<ActionEvent> filtered_actions, std::string question) {
  GameContext ctx;
  for (const auto& p : clip.offense()) ctx.offense_players.push_back(p.full_name);
  for (const auto& p : clip.defense()) ctx.defense_players.push_back(p.full_name);
  ctx.tactic = tactic;
  ctx.tactic_description = std::move(tactic_description);
  ctx.actions = std::move(filtered_actions);
  ctx.rosters = clip.rosters;
  ctx.actions_text = render_actions_text(ctx.actions, ctx.rosters);
  ctx.question = std::move(question);
  return ctx;
}

std::vector<std::string_view> overview_sections(Perspective p) {
  if (p == Perspective::First)
    return {"[ANSWER FORMAT]", "[PLAYER INFORMATION]", "[CONSTRAINT]", "[TACTIC]", "[ACTION]"};
  return {"[PLAYER INFORMATION]", "[CONSTRAINT]", "[TACTIC]", "[ACTION]"};
}

std::vector<std::string_view> action_sections(Perspective) {
  return {"[CONSTRAINT]", "[PLAYER INFORMATION]", "[ANSWER FORMAT]", "[ACTION]"};
}

PromptBundle build_prompts(const GameContext& ctx, Perspective perspective) {
  if (trim(ctx.tactic_description).empty())
    throw std::invalid_argument(fmt::format("missing description for tactic {}", code(ctx.tactic)));
  const std::map<std::string, std::string> slots = {
      {"offense", join(ctx.offense_players, ", ")},
      {"defense", join(ctx.defense_players, ", ")},
      {"tactic", ctx.tactic_description},
      {"actions", ctx.actions_text},
      {"question", ctx.question},
  };
  PromptBundle b;
  b.perspective = perspective;
  b.overview_prompt = fill(perspective == Perspective::First ? detail::kOverviewFirst : detail::kOverviewThird, slots);
  b.action_prompt = fill(perspective == Perspective::First ? detail::kActionsFirst : detail::kActionsThird, slots);
  return b;
}

std::vector<Segment> parse_explanation(std::string_view text, Perspective perspective, const GameContext& ctx) {
  const std::vector<ActionItem> items = ctx.items();
  const std::string normalized = normalize_breaks(text);
  if (trim(normalized).empty()) throw ParseError(ParseError::Kind::EmptyText, "answer is empty");
  const auto blocks = split_blocks(normalized);
  if (blocks.size() != items.size())
    throw ParseError(ParseError::Kind::CountMismatch,
                     fmt::format("expected {} segments, got {}", items.size(), blocks.size()));

  static const std::regex action_prefix(R"(^Action\s*\d+\s*[.:)]?\s*)", std::regex::icase);
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Segment seg;
    seg.action_index = i;
    seg.anchor_frame = items[i].anchor_frame;
    if (perspective == Perspective::Third) {
      std::string body = std::regex_replace(join(blocks[i], " "), action_prefix, "",
                                            std::regex_constants::format_first_only);
      body = trim(body);
      if (body.empty()) throw ParseError(ParseError::Kind::EmptyText, fmt::format("segment {} is empty", i + 1));
      seg.lines.push_back({std::string(kNarrator), std::move(body)});
    } else {
      for (const auto& line : blocks[i]) {
        const auto colon = line.find(':');
        if (colon == std::string::npos)
          throw ParseError(ParseError::Kind::UnknownSpeaker,
                           fmt::format("segment {}: line without a speaker: '{}'", i + 1, line));
        std::string speaker = trim(std::string_view(line).substr(0, colon));
        std::string said = trim(std::string_view(line).substr(colon + 1));
        const bool known = std::any_of(ctx.rosters.begin(), ctx.rosters.end(),
                                       [&](const PlayerRef& p) { return p.full_name == speaker; });
        if (!known)
          throw ParseError(ParseError::Kind::UnknownSpeaker,
                           fmt::format("segment {}: '{}' is not a rostered player", i + 1, speaker));
        if (said.empty())
          throw ParseError(ParseError::Kind::EmptyText, fmt::format("segment {}: {} says nothing", i + 1, speaker));
        seg.lines.push_back({std::move(speaker), std::move(said)});
      }
      if (items[i].kind == ActionKind::Shoot && seg.lines.size() != 1)
        throw ParseError(ParseError::Kind::ShootLineCount,
                         fmt::format("segment {}: a shot takes one line, got {}", i + 1, seg.lines.size()));
    }
    segments.push_back(std::move(seg));
  }
  return segments;
}

FallbackText fallback_generate(const GameContext& ctx, Perspective perspective) {
  const auto name = [&](const std::optional<std::string>& id) { return name_of(ctx.rosters, id.value_or("")); };
  const auto area = [](const std::optional<RegionId>& r) { return std::string(r ? area_name(*r) : "floor"); };
  const auto items = ctx.items();

  std::vector<std::string> blocks;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const ActionEvent& e = ctx.actions[items[i].events.front()];
    const std::string actor = name(e.actor);
    std::vector<std::string> lines;
    if (perspective == Perspective::Third) {
      std::string s;
      switch (e.kind) {
        case ActionKind::Pass:
          s = fmt::format("{} passes the ball to {}. Reason: {}.", actor, name(e.target), pick(ReasonCatalog::pass(), i));
          break;
        case ActionKind::Screen:
          s = fmt::format("{} sets a screen on {}. Reason: {}.", actor, name(e.target), pick(ReasonCatalog::screen(), i));
          break;
        case ActionKind::Shoot:
          s = fmt::format("{} takes the shot to finish the possession.", actor);
          break;
        case ActionKind::Cut:
          if (items[i].events.size() == 2) {
            const ActionEvent& p = ctx.actions[items[i].events[1]];
            s = fmt::format("{} cuts from the {} to the {} and {} passes the ball to {}. Reasons: {}; {}.", actor,
                            area(e.from_region), area(e.to_region), name(p.actor), actor, pick(ReasonCatalog::cut(), i),
                            pick(ReasonCatalog::pass(), i));
          } else {
            s = fmt::format("{} cuts from the {} to the {}. Reason: {}.", actor, area(e.from_region),
                            area(e.to_region), pick(ReasonCatalog::cut(), i));
          }
          break;
      }
      lines.push_back(fmt::format("Action {}. {}", i + 1, s));
    } else {
      switch (e.kind) {
        case ActionKind::Pass:
          lines.push_back(fmt::format("{}: {}, the ball is yours, I am moving it to {}.", actor, name(e.target),
                                      lower(pick(ReasonCatalog::pass(), i))));
          lines.push_back(fmt::format("{}: Got it, {}, I am ready for the next move.", name(e.target), actor));
          break;
        case ActionKind::Screen:
          lines.push_back(fmt::format("{}: I am planting right here. Reason: {}.", actor,
                                      pick(ReasonCatalog::screen(), i)));
          lines.push_back(fmt::format("{}: Wait, who is in my way? I lost my man.", name(e.target)));
          break;
        case ActionKind::Shoot:
          lines.push_back(fmt::format("{}: I have space, so I am taking the shot.", actor));
          break;
        case ActionKind::Cut:
          lines.push_back(fmt::format("{}: I am cutting from the {} to the {} to {}.", actor, area(e.from_region),
                                      area(e.to_region), pick(ReasonCatalog::cut(), i)));
          if (items[i].events.size() == 2) {
            const ActionEvent& p = ctx.actions[items[i].events[1]];
            lines.push_back(fmt::format("{}: I see you, {}, the pass is coming to {}.", name(p.actor), actor,
                                        lower(pick(ReasonCatalog::pass(), i))));
          }
          break;
      }
    }
    blocks.push_back(join(lines, "\n"));
  }

  FallbackText out;
  out.text = join(blocks, "\n\n");
  const std::string first_sentence = [&] {
    const auto dot = ctx.tactic_description.find(". ");
    return dot == std::string::npos ? trim(ctx.tactic_description) : ctx.tactic_description.substr(0, dot + 1);
  }();
  if (perspective == Perspective::Third) {
    out.summary = fmt::format("The offense runs the {}. {}", display_name(ctx.tactic), first_sentence);
  } else {
    const std::string speaker = ctx.offense_players.empty() ? std::string(kNarrator) : ctx.offense_players.front();
    out.summary = fmt::format("{}: Let's run the {}. {}", speaker, display_name(ctx.tactic), first_sentence);
  }
  return out;
}

// ---- scripted client ---------------------------------------------------------

ScriptedChatClient::ScriptedChatClient(const json& script) {
  if (!script.is_object()) throw std::invalid_argument("chat script must be an object");
  if (auto it = script.find("rules"); it != script.end()) {
    if (!it->is_array()) throw std::invalid_argument("chat script 'rules' must be an array");
    for (const auto& r : *it) {
      Rule rule;
      if (r.contains("match")) {
        const json& m = r.at("match");
        if (m.is_string()) rule.substrings.push_back(m.get<std::string>());
        else rule.substrings = m.get<std::vector<std::string>>();
      }
      if (r.contains("regex")) rule.regex = r.at("regex").get<std::string>();
      if (rule.substrings.empty() && !rule.regex) throw std::invalid_argument("chat rule needs 'match' or 'regex'");
      const json& responses = r.at("responses");
      if (!responses.is_array() || responses.empty())
        throw std::invalid_argument("chat rule needs a non-empty 'responses' array");
      rule.responses.assign(responses.begin(), responses.end());
      rules_.push_back(std::move(rule));
    }
  }
  if (auto it = script.find("default"); it != script.end() && it->is_string()) default_ = it->get<std::string>();
}

std::unique_ptr<ScriptedChatClient> ScriptedChatClient::from_file(const std::string& path) {
  return std::make_unique<ScriptedChatClient>(json::parse(read_file(path)));
}

std::string ScriptedChatClient::complete(const std::string& prompt, std::chrono::milliseconds) {
  std::lock_guard lock(mutex_);
  prompts_.push_back(prompt);
  for (auto& rule : rules_) {
    std::smatch m;
    const bool hit = rule.regex ? std::regex_search(prompt, m, std::regex(*rule.regex))
                                : std::all_of(rule.substrings.begin(), rule.substrings.end(),
                                              [&](const std::string& s) { return prompt.find(s) != std::string::npos; });
    if (!hit) continue;
    const json& r = rule.responses[std::min(rule.cursor, rule.responses.size() - 1)];
    ++rule.cursor;
    if (r.is_string()) return rule.regex ? m.format(r.get<std::string>()) : r.get<std::string>();
    if (r.value("timeout", false)) throw ChatTimeout("scripted timeout");
    if (r.contains("error")) throw ChatError(r.at("error").get<std::string>());
    throw ChatError("malformed scripted response");
  }
  if (default_) return *default_;
  throw ChatError("no scripted response matches the prompt");
}

std::vector<std::string> ScriptedChatClient::prompts() const {
  std::lock_guard lock(mutex_);
  return prompts_;
}

// ---- two-step explanation ----------------------------------------------------

ExplanationPlan answer_tactic_question(const GameContext& ctx, Perspective perspective, ChatClient& client,
                                       const AnswerOptions& options) {
  const PromptBundle prompts = build_prompts(ctx, perspective);
  ExplanationPlan plan;
  plan.perspective = perspective;
  const int tries = 1 + std::max(0, options.retries);

  std::optional<std::string> summary;
  std::string last_failure;
  for (int t = 0; t < tries && !summary; ++t) {
    try {
      std::string s = trim(client.complete(prompts.overview_prompt, options.timeout));
      if (!s.empty()) summary = std::move(s);
      else last_failure = "empty overview";
    } catch (const ChatTimeout& e) {
      last_failure = e.what();
    } catch (const ChatError& e) {
      last_failure = e.what();
    }
  }

  std::optional<std::vector<Segment>> segments;
  for (int t = 0; t < tries && !segments; ++t) {
    ++plan.attempts;
    try {
      segments = parse_explanation(client.complete(prompts.action_prompt, options.timeout), perspective, ctx);
    } catch (const ParseError& e) {
      last_failure = fmt::format("{}: {}", to_string(e.kind()), e.what());
    } catch (const ChatTimeout& e) {
      last_failure = e.what();
    } catch (const ChatError& e) {
      last_failure = e.what();
    }
  }

  if (!summary || !segments) {
    if (!options.fallback) throw NarrativeError(fmt::format("explanation failed: {}", last_failure));
    const FallbackText fb = fallback_generate(ctx, perspective);
    if (!summary) summary = fb.summary;
    if (!segments) segments = parse_explanation(fb.text, perspective, ctx);
    plan.fallback_used = true;
  }
  plan.summary = std::move(*summary);
  plan.segments = std::move(*segments);
  return plan;
}

std::map<TacticLabel, std::string> load_tactic_descriptions(std::string_view document) {
  const json doc = json::parse(document);
  if (!doc.is_object()) throw std::invalid_argument("tactic descriptions must be a JSON object");
  std::map<TacticLabel, std::string> out;
  for (const auto& [key, value] : doc.items()) {
    const auto label = parse_tactic(key);
    if (!label) throw std::invalid_argument(fmt::format("unknown label '{}' (valid: {})", key, tactic_code_list()));
    if (!value.is_string()) throw std::invalid_argument(fmt::format("description for {} must be a string", key));
    out[*label] = value.get<std::string>();
  }
  for (TacticLabel l : kAllTactics)
    if (!out.count(l)) throw std::invalid_argument(fmt::format("missing description for {}", code(l)));
  return out;
}

json to_json(const Segment& s) {
  json lines = json::array();
  for (const auto& l : s.lines) lines.push_back({{"speaker", l.speaker}, {"text", l.text}});
  return {{"action", s.action_index}, {"anchor", s.anchor_frame}, {"lines", std::move(lines)}};
}

json to_json(const ExplanationPlan& plan) {
  json segs = json::array();
  for (const auto& s : plan.segments) segs.push_back(to_json(s));
  return {{"summary", plan.summary},
          {"perspective", std::string(to_string(plan.perspective))},
          {"segments", std::move(segs)},
          {"fallback_used", plan.fallback_used},
          {"attempts", plan.attempts}};
}

}  // namespace courtside
