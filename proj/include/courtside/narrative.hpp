// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "courtside/core.hpp"
#include "courtside/events.hpp"

namespace courtside {

enum class Perspective { First, Third };
std::string_view to_string(Perspective p);
std::optional<Perspective> parse_perspective(std::string_view text);

/// Verbatim reason lists offered to the model, one list per action kind.
struct ReasonCatalog {
  static const std::vector<std::string>& cut();
  static const std::vector<std::string>& pass();
  static const std::vector<std::string>& screen();
};

/// One rendered action line. A Cut directly followed by a Pass to the cutter becomes a
/// single item holding both events.
struct ActionItem {
  std::vector<std::size_t> events;  // indices into the action list, 1 or 2
  ActionKind kind = ActionKind::Pass;  // kind that decides the speaker layout
  int anchor_frame = 0;
};

std::vector<ActionItem> group_actions(const std::vector<ActionEvent>& actions);

/// Numbered lines such as "1.  Pass Ann Lee -> Bo Park", newline separated, no trailing
/// newline. Throws std::invalid_argument for a player id missing from `rosters`.
std::string render_actions_text(const std::vector<ActionEvent>& actions, const std::vector<PlayerRef>& rosters);

struct GameContext {
  std::vector<std::string> offense_players;  // full names
  std::vector<std::string> defense_players;
  TacticLabel tactic = TacticLabel::F23;
  std::string tactic_description;
  std::vector<ActionEvent> actions;  // filtered, chronological
  std::vector<PlayerRef> rosters;
  std::string actions_text;
  std::string question;

  std::vector<ActionItem> items() const { return group_actions(actions); }
};

GameContext make_context(const Clip& clip, TacticLabel tactic, std::string tactic_description,
                         std::vector<ActionEvent> filtered_actions, std::string question);

struct PromptBundle {
  std::string overview_prompt;
  std::string action_prompt;
  Perspective perspective = Perspective::Third;
};

/// Section headers carried by each template, in order of appearance.
std::vector<std::string_view> overview_sections(Perspective p);
std::vector<std::string_view> action_sections(Perspective p);

/// Throws std::invalid_argument when the tactic description is empty.
PromptBundle build_prompts(const GameContext& ctx, Perspective perspective);

inline constexpr std::string_view kNarrator = "Narrator";

struct SegmentLine {
  std::string speaker;
  std::string text;
  friend bool operator==(const SegmentLine&, const SegmentLine&) = default;
};

struct Segment {
  std::size_t action_index = 0;  // index into the item list
  std::vector<SegmentLine> lines;
  int anchor_frame = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { CountMismatch, UnknownSpeaker, EmptyText, ShootLineCount };
  ParseError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};
std::string_view to_string(ParseError::Kind kind);

/// Splits a model answer into one segment per action item. Literal "\n" sequences count as
/// line breaks. Throws ParseError.
std::vector<Segment> parse_explanation(std::string_view text, Perspective perspective, const GameContext& ctx);

struct FallbackText {
  std::string summary;
  std::string text;
};

/// Template narrative in the same answer grammar the model is asked for.
FallbackText fallback_generate(const GameContext& ctx, Perspective perspective);

// ---- chat clients ----------------------------------------------------------

class ChatTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ChatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  /// Throws ChatTimeout or ChatError.
  virtual std::string complete(const std::string& prompt, std::chrono::milliseconds timeout) = 0;
};

/// Deterministic client driven by a rule file:
///   {"rules": [{"match": "substring" | ["all", "of", "these"] | "regex": "...",
///               "responses": ["text", {"timeout": true}, {"error": "msg"}]}], "default": "text"}
/// The first matching rule answers; successive matches walk its responses and then repeat
/// the last one. Responses of regex rules may reference capture groups as $1, $2, ...
class ScriptedChatClient : public ChatClient {
 public:
  explicit ScriptedChatClient(const nlohmann::json& script);
  static std::unique_ptr<ScriptedChatClient> from_file(const std::string& path);

  std::string complete(const std::string& prompt, std::chrono::milliseconds timeout) override;
  std::vector<std::string> prompts() const;

 private:
  struct Rule {
    std::vector<std::string> substrings;
    std::optional<std::string> regex;
    std::vector<nlohmann::json> responses;
    std::size_t cursor = 0;
  };
  mutable std::mutex mutex_;
  std::vector<Rule> rules_;
  std::optional<std::string> default_;
  std::vector<std::string> prompts_;
};

struct RemoteChatConfig {
  std::string endpoint;  // e.g. https://host/v1/chat/completions
  std::string model;
  std::string key;
  std::chrono::milliseconds timeout{30000};
};

/// Chat-completion endpoint over HTTP(S).
std::unique_ptr<ChatClient> make_remote_chat_client(const RemoteChatConfig& config);

// ---- two-step explanation --------------------------------------------------

struct AnswerOptions {
  int retries = 2;
  bool fallback = true;
  std::chrono::milliseconds timeout{30000};
};

struct ExplanationPlan {
  std::string summary;
  std::vector<Segment> segments;
  Perspective perspective = Perspective::Third;
  bool fallback_used = false;
  int attempts = 0;  // action-step requests sent to the client
};

class NarrativeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Overview request, then the action-by-action request with up to `retries` re-asks on
/// parse or client failure, then the fallback (or NarrativeError when it is disabled).
ExplanationPlan answer_tactic_question(const GameContext& ctx, Perspective perspective, ChatClient& client,
                                       const AnswerOptions& options = {});

/// Label -> description text; every label must be present.
std::map<TacticLabel, std::string> load_tactic_descriptions(std::string_view document);

nlohmann::json to_json(const Segment& s);
nlohmann::json to_json(const ExplanationPlan& plan);

}  // namespace courtside
