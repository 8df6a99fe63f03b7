// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "courtside/config.hpp"
#include "courtside/filtering.hpp"
#include "courtside/ingestion.hpp"
#include "courtside/narrative.hpp"
#include "courtside/overlay.hpp"
#include "courtside/statsqa.hpp"
#include "courtside/tactics.hpp"

namespace courtside {

inline constexpr std::string_view kMediaType = "application/vnd.courtside.v1+json";

struct PipelineParams {
  DetectionParams detection;
  FilterParams filter;
  DistanceParams distance;
  int k = 3;
};

/// Everything derived from a clip without the chat model.
struct ClipAnalysis {
  Clip clip;
  std::vector<ActionEvent> detected;
  std::vector<FilterDecision> decisions;
  std::vector<ActionEvent> filtered;
  std::optional<TacticPrediction> tactic;  // empty without a reference set
};

ClipAnalysis analyze_clip(Clip clip, const ReferenceSet* refs, const PipelineParams& params);

/// CLI / metadata view: clip summary, detected actions with drop reasons, filtered actions, tactic.
nlohmann::json analysis_json(const ClipAnalysis& a);

using ChatFactory = std::function<std::unique_ptr<ChatClient>()>;

/// Per-request client built from the chat settings.
ChatFactory make_chat_factory(const ChatConfig& chat);

struct HttpRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = std::string(kMediaType);
};

struct ServiceData {
  std::vector<Clip> clips;
  ReferenceSet references;
  std::map<TacticLabel, std::string> descriptions;
  std::optional<StatsTable> stats;
  std::vector<std::shared_ptr<const Tool>> extra_tools;
};

/// Reads clips, references, descriptions, stats and tool fixtures named by the config.
/// Missing optional files (stats, tool fixture) are skipped; others throw.
ServiceData load_service_data(const AppConfig& config);

/// Request handling over immutable, precomputed state. Safe for concurrent calls.
class Service {
 public:
  Service(const AppConfig& config, ServiceData data, ChatFactory chat);

  HttpResponse handle(const HttpRequest& request) const;

  std::size_t clip_count() const { return analyses_.size(); }
  const ClipAnalysis* analysis(std::string_view clip_id) const;
  const AppConfig& config() const { return config_; }

  /// Blocks serving `config().listen`; static files from static_dir under "/".
  void serve() const;

 private:
  HttpResponse health() const;
  HttpResponse list_clips() const;
  HttpResponse clip_detail(const ClipAnalysis& a) const;
  HttpResponse frames(const ClipAnalysis& a, const HttpRequest& r) const;
  HttpResponse overlay(const ClipAnalysis& a, const HttpRequest& r) const;
  HttpResponse ask(const ClipAnalysis& a, const HttpRequest& r) const;
  HttpResponse stats_ask(const HttpRequest& r) const;

  AppConfig config_;
  std::vector<ClipAnalysis> analyses_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<TacticLabel, std::string> descriptions_;
  ToolRegistry tools_;
  ChatFactory chat_;
};

}  // namespace courtside
