// SPDX-License-Identifier: Apache-2.0
// Release gate: prints one PASS/FAIL line per criterion and exits non-zero on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "courtside/assignment.hpp"
#include "courtside/config.hpp"
#include "courtside/detection.hpp"
#include "courtside/dtw.hpp"
#include "courtside/filtering.hpp"
#include "courtside/narrative.hpp"
#include "courtside/plays.hpp"
#include "courtside/service.hpp"
#include "courtside/statsqa.hpp"
#include "courtside/tactics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/scenarios.hpp"
#include "support/schema_check.hpp"

namespace {

using namespace courtside;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---- 1 ----------------------------------------------------------------------

Verdict dtw_oracle() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> short_len(1, 8), long_len(1, 64);
  double worst_short = 0.0, worst_long = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_walk(rng, short_len(rng));
    const auto b = testing::random_walk(rng, short_len(rng));
    const double diff = std::abs(dtw_exact(a, b) - testing::enumerate_warping_paths(a, b));
    worst_short = std::max(worst_short, diff);
    v.require(diff <= 1e-9, fmt::format("short pair {} differs by {:.3g}", i, diff));
  }
  for (int i = 0; i < 200; ++i) {
    const auto a = testing::random_walk(rng, long_len(rng));
    const auto b = testing::random_walk(rng, long_len(rng));
    const int full = static_cast<int>(std::max(a.size(), b.size()));
    const double diff = std::abs(fastdtw(a, b, full) - dtw_exact(a, b));
    worst_long = std::max(worst_long, diff);
    v.require(diff <= 1e-9, fmt::format("long pair {} differs by {:.3g}", i, diff));
  }
  const double secs = seconds_since(t0);
  v.require(secs < 5.0, fmt::format("took {:.2f} s", secs));
  v.detail = fmt::format("max |exact-enum| {:.2g}, max |fast(full)-exact| {:.2g}, {:.2f} s", worst_short, worst_long, secs);
  return v;
}

// ---- 2 ----------------------------------------------------------------------

Verdict fastdtw_bounds() {
  Verdict v;
  std::mt19937_64 rng(102);
  std::uniform_int_distribution<std::size_t> len(10, 120);
  int checks = 0;
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_walk(rng, len(rng));
    const auto b = testing::random_walk(rng, len(rng));
    const double exact = dtw_exact(a, b);
    const int full = static_cast<int>(std::max(a.size(), b.size()));
    double previous = std::numeric_limits<double>::infinity();
    for (int r : {1, 5, 10, full}) {
      const double d = fastdtw(a, b, r);
      v.require(d >= exact - 1e-9, fmt::format("pair {} r={} below exact ({} < {})", i, r, d, exact));
      v.require(d <= previous + 1e-9, fmt::format("pair {} r={} increased ({} > {})", i, r, d, previous));
      previous = d;
      ++checks;
    }
  }
  v.detail = fmt::format("{} (pair, radius) checks", checks);
  return v;
}

// ---- 3 ----------------------------------------------------------------------

Clip single_frame_clip(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(0, 47), y(0, 50);
  Clip c;
  c.clip_id = "marking";
  c.rosters = demo_rosters();
  TrackedFrame f;
  f.ball = {x(rng), y(rng)};
  for (const auto& p : c.rosters) f.players.push_back({p.player_id, {x(rng), y(rng)}, {}});
  c.frames.push_back(std::move(f));
  return c;
}

Verdict assignment_oracle() {
  Verdict v;
  std::mt19937_64 rng(103);
  for (int i = 0; i < 100; ++i) {
    ReferenceClip ref;
    TrajectorySet query;
    for (auto& t : ref.trajectories) t = testing::as_trajectory(testing::random_walk(rng, 12, 0.03));
    for (int p = 0; p < 5; ++p) query.push_back(testing::as_trajectory(testing::random_walk(rng, 10, 0.03)));
    const DistanceParams params{10, Correspondence::OptimalAssignment};
    std::vector<std::vector<double>> cost(5, std::vector<double>(5));
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 5; ++c)
        cost[r][c] = fastdtw(positions(query[r]), positions(ref.trajectories[c]), params.radius);
    const auto oracle = testing::brute_force_assignment(cost);
    const double got = clip_distance(query, ref, params);
    v.require(got == oracle.cost, fmt::format("clip_distance instance {}: {} vs {}", i, got, oracle.cost));

    const Clip clip = single_frame_clip(rng);
    std::vector<std::vector<double>> dist(5, std::vector<double>(5));
    for (int d = 0; d < 5; ++d)
      for (int a = 0; a < 5; ++a)
        dist[d][a] = distance(clip.position(fmt::format("a{}", d + 1), 0), clip.position(fmt::format("h{}", a + 1), 0));
    const auto best = testing::brute_force_assignment(dist);
    const MarkingMap m = compute_marking(clip, clip.frames[0].frame_index);
    bool same = m.cost == best.cost;
    for (int d = 0; d < 5; ++d) same = same && m.pairs[d].second == fmt::format("h{}", best.perm[d] + 1);
    v.require(same, fmt::format("compute_marking instance {} differs", i));
  }
  v.detail = "100 clip-distance and 100 marking instances";
  return v;
}

// ---- 4 and 5 ------------------------------------------------------------------

const ReferenceSet& cv_references() {
  static const ReferenceSet refs = [] {
    ReferenceBuildParams p;
    p.per_class = 15;
    p.sigma = 1.5;
    return build_reference_set(p);
  }();
  return refs;
}

Verdict self_classification() {
  Verdict v;
  const ReferenceSet& refs = cv_references();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < refs.clips.size(); ++i) {
    const TrajectorySet q(refs.clips[i].trajectories.begin(), refs.clips[i].trajectories.end());
    const TacticPrediction p = knn_classify(q, refs, 1, {});
    const bool ok = p.label == refs.clips[i].label && p.neighbors.front().distance == 0.0;
    hits += ok ? 1 : 0;
    v.require(ok, fmt::format("clip {} ({}) -> {} at {}", i, code(refs.clips[i].label), code(p.label),
                              p.neighbors.front().distance));
  }
  v.detail = fmt::format("{}/{} clips", hits, refs.clips.size());
  return v;
}

Verdict cross_validation() {
  Verdict v;
  const ReferenceSet& refs = cv_references();
  const auto t0 = Clock::now();
  const CrossValidationReport a = cross_validate(refs, 5, 3, {}, 2024);
  const double secs = seconds_since(t0);
  const CrossValidationReport b = cross_validate(refs, 5, 3, {}, 2024);
  v.require(refs.clips.size() == 150, fmt::format("{} clips", refs.clips.size()));
  v.require(a.matrix.accuracy >= 0.90, fmt::format("accuracy {:.4f}", a.matrix.accuracy));
  for (std::size_t r = 0; r < a.matrix.rows.size(); ++r) {
    double sum = 0.0;
    for (double x : a.matrix.rows[r]) sum += x;
    v.require(std::abs(sum - 1.0) <= 1e-9, fmt::format("row {} sums to {}", r, sum));
  }
  bool bitwise = a.matrix.counts == b.matrix.counts && a.matrix.rows.size() == b.matrix.rows.size();
  for (std::size_t r = 0; bitwise && r < a.matrix.rows.size(); ++r)
    bitwise = std::memcmp(a.matrix.rows[r].data(), b.matrix.rows[r].data(), a.matrix.rows[r].size() * sizeof(double)) == 0;
  v.require(bitwise, "repeated run differs");
  v.require(secs < 60.0, fmt::format("took {:.1f} s", secs));
  v.detail = fmt::format("accuracy {:.4f}, {:.1f} s", a.matrix.accuracy, secs);
  return v;
}

// ---- 6 ----------------------------------------------------------------------

Verdict detector_suite() {
  Verdict v;
  const auto scenarios = testing::detector_scenarios();
  std::set<ActionKind> kinds;
  for (const auto& sc : scenarios)
    for (const auto& e : sc.script.expected_events) kinds.insert(e.kind);
  v.require(scenarios.size() >= 12, fmt::format("only {} plays", scenarios.size()));
  v.require(kinds.size() == 4, "not every action kind is covered");

  testing::MatchScore clean, noisy;
  auto add = [](testing::MatchScore& into, const testing::MatchScore& s) {
    into.true_positive += s.true_positive;
    into.detected += s.detected;
    into.expected += s.expected;
  };
  for (const auto& sc : scenarios) {
    const SyntheticPlay play = generate_synthetic_play(sc.script, kDefaultFps, 0.0, 1);
    const auto s = testing::score_actions(detect_all(play.clip), play.events, testing::kAnchorTolerance);
    v.require(s.f1() == 1.0, fmt::format("{} at sigma 0: F1 {:.3f}", sc.name, s.f1()));
    add(clean, s);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const SyntheticPlay jittered = generate_synthetic_play(sc.script, kDefaultFps, 0.5, seed);
      add(noisy, testing::score_actions(detect_all(jittered.clip), jittered.events, testing::kAnchorTolerance));
    }
  }
  v.require(noisy.f1() >= 0.9, fmt::format("F1 at sigma 0.5 is {:.3f}", noisy.f1()));

  auto cut_count = [](double speed) {
    const SyntheticPlay play = generate_synthetic_play(testing::cut_speed_play(speed).script, kDefaultFps, 0.0, 1);
    return detect_cut(play.clip, compute_possession(play.clip, {}), {}).size();
  };
  const std::size_t slow = cut_count(5.0), fast = cut_count(7.0);
  v.require(slow == 0, fmt::format("5 ft/s move produced {} cuts", slow));
  v.require(fast == 1, fmt::format("7 ft/s move produced {} cuts", fast));
  v.detail = fmt::format("{} plays, F1 {:.3f} at sigma 0, {:.3f} at sigma 0.5 (20 seeds), cuts at 5/7 ft/s: {}/{}",
                         scenarios.size(), clean.f1(), noisy.f1(), slow, fast);
  return v;
}

// ---- 7 ----------------------------------------------------------------------

Verdict filter_fixtures() {
  Verdict v;
  const auto run = [](const std::vector<ActionEvent>& e) { return filter_actions(build_intervals(e), {}, kDefaultFps); };
  const auto has_kind = [](const std::vector<ActionEvent>& e, ActionKind k) {
    return std::any_of(e.begin(), e.end(), [k](const ActionEvent& x) { return x.kind == k; });
  };
  const auto unreceived = run(testing::unreceived_cut_case());
  v.require(!has_kind(unreceived, ActionKind::Cut) && unreceived.size() == 2, "unreceived cut kept");
  const auto distant = run(testing::distant_screen_case());
  v.require(!has_kind(distant, ActionKind::Screen) && distant.size() == 3, "distant screen kept");
  const auto chain = testing::seven_action_chain();
  v.require(run(chain) == chain, "seven-item chain lost an action");

  std::mt19937_64 rng(107);
  for (int i = 0; i < 200; ++i) {
    const auto events = testing::random_action_list(rng);
    const auto once = run(events);
    v.require(run(once) == once, fmt::format("list {} not idempotent", i));
  }
  v.detail = "3 fixtures, 200 random lists";
  return v;
}

// ---- 8 ----------------------------------------------------------------------

std::size_t count_of(const std::string& hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + needle.size())) ++n;
  return n;
}

Verdict narrative_round_trip() {
  Verdict v;
  std::mt19937_64 rng(108);
  int shoot_segments = 0;
  for (int i = 0; i < 200; ++i) {
    const GameContext ctx = testing::random_context(rng);
    const auto items = ctx.items();
    const std::size_t numbered = static_cast<std::size_t>(std::count(ctx.actions_text.begin(), ctx.actions_text.end(), '\n')) + 1;
    for (Perspective p : {Perspective::First, Perspective::Third}) {
      try {
        const auto segments = parse_explanation(fallback_generate(ctx, p).text, p, ctx);
        v.require(segments.size() == items.size() && segments.size() == numbered,
                  fmt::format("context {} {}: {} segments for {} items", i, to_string(p), segments.size(), items.size()));
        if (p == Perspective::First)
          for (std::size_t s = 0; s < segments.size() && s < items.size(); ++s)
            if (items[s].kind == ActionKind::Shoot) {
              ++shoot_segments;
              v.require(segments[s].lines.size() == 1, fmt::format("context {}: shot with {} lines", i, segments[s].lines.size()));
            }
      } catch (const ParseError& e) {
        v.require(false, fmt::format("context {} {}: {}", i, to_string(p), e.what()));
      }
      const PromptBundle b = build_prompts(ctx, p);
      for (auto h : overview_sections(p))
        v.require(count_of(b.overview_prompt, h) == 1, fmt::format("overview {} has {} x {}", to_string(p), count_of(b.overview_prompt, h), h));
      for (auto h : action_sections(p))
        v.require(count_of(b.action_prompt, h) == 1, fmt::format("action {} has {} x {}", to_string(p), count_of(b.action_prompt, h), h));
    }
  }
  v.detail = fmt::format("400 round trips, {} first-person shot segments", shoot_segments);
  return v;
}

// ---- 9 and 10 ---------------------------------------------------------------

struct DemoService {
  AppConfig config;
  ServiceData data;
  std::unique_ptr<Service> service;
};

DemoService& demo_service() {
  static DemoService d = [] {
    DemoService out;
    out.config = AppConfig::load(std::string(COURTSIDE_DATA_DIR) + "/courtside.conf");
    out.config.check();
    out.data = load_service_data(out.config);
    out.service = std::make_unique<Service>(out.config, out.data, make_chat_factory(out.config.chat));
    return out;
  }();
  return d;
}

Verdict service_contract() {
  Verdict v;
  DemoService& d = demo_service();
  const Service& svc = *d.service;
  const auto schema = testing::SchemaChecker::from_file(std::string(COURTSIDE_SCHEMA_DIR) + "/api.schema.json");
  const auto valid = [&](const HttpResponse& r, const std::string& def) {
    const auto errors = schema.check(json::parse(r.body), def);
    return errors.empty();
  };

  std::vector<double> latencies_ms;
  int asks = 0;
  for (const auto& clip : d.data.clips)
    for (const char* p : {"first", "third"}) {
      const HttpRequest req{"POST", "/api/clips/" + clip.clip_id + "/ask", {},
                            json{{"question", "What is the offense running?"}, {"perspective", p}}.dump()};
      const auto t0 = Clock::now();
      const HttpResponse a = svc.handle(req);
      latencies_ms.push_back(seconds_since(t0) * 1000.0);
      const HttpResponse b = svc.handle(req);
      ++asks;
      v.require(a.status == 200, fmt::format("{} {}: status {}", clip.clip_id, p, a.status));
      v.require(valid(a, "askResponse"), fmt::format("{} {}: body violates the schema", clip.clip_id, p));
      v.require(a.body == b.body, fmt::format("{} {}: repeated request differs", clip.clip_id, p));
    }

  const std::string some = d.data.clips.front().clip_id;
  const auto expect_error = [&](const HttpResponse& r, int status, const std::string& code) {
    const bool ok = r.status == status && valid(r, "error") && json::parse(r.body)["error"]["code"] == code;
    v.require(ok, fmt::format("expected {} {}, got {} {}", status, code, r.status, r.body.substr(0, 120)));
  };
  expect_error(svc.handle({"POST", "/api/clips/no-such-clip/ask", {}, R"({"question": "q"})"}), 404, "unknown_clip");
  expect_error(svc.handle({"GET", "/api/nowhere", {}, ""}), 404, "not_found");
  expect_error(svc.handle({"POST", "/api/clips/" + some + "/ask", {}, "{"}), 422, "invalid_body");
  expect_error(svc.handle({"POST", "/api/clips/" + some + "/ask", {}, R"({"question": ""})"}), 422, "invalid_question");
  expect_error(svc.handle({"POST", "/api/clips/" + some + "/ask", {}, R"({"question": "q", "perspective": "second"})"}),
               422, "invalid_perspective");

  AppConfig strict = d.config;
  strict.chat.fallback = false;
  strict.chat.retries = 0;
  const json down = {{"rules", json::array()}};
  const Service failing(strict, d.data, [down] { return std::make_unique<ScriptedChatClient>(down); });
  expect_error(failing.handle({"POST", "/api/clips/" + some + "/ask", {}, R"({"question": "q"})"}), 502, "chat_failed");

  std::sort(latencies_ms.begin(), latencies_ms.end());
  const double median = latencies_ms[latencies_ms.size() / 2];
  v.require(median < 100.0, fmt::format("median latency {:.1f} ms", median));
  v.detail = fmt::format("{} clips, {} ask pairs, median {:.2f} ms", d.data.clips.size(), asks, median);
  return v;
}

bool trace_replays(const ReactTrace& trace, const ToolRegistry& tools) {
  for (const auto& s : trace.steps) {
    const Tool* t = tools.find(s.tool);
    if (t == nullptr || t->invoke(s.input) != s.observation) return false;
  }
  return true;
}

Verdict react_agent() {
  Verdict v;
  DemoService& d = demo_service();
  ToolRegistry tools;
  tools.add(std::make_shared<StatsTool>(*d.data.stats));
  for (const auto& t : d.data.extra_tools) tools.add(t);

  // Oracle: the home team's fouls summed straight off the table.
  const StatsTable& table = *d.data.stats;
  const std::size_t team = *table.column_index("team"), fouls = *table.column_index("fouls");
  std::int64_t expected = 0;
  for (const auto& row : table.rows)
    if (std::get<std::string>(row[team]) == "home") expected += std::get<std::int64_t>(row[fouls]);

  auto client = make_chat_factory(d.config.chat)();
  std::string answer;
  try {
    const ReactResult r = run_react("How many fouls did the home team commit?", tools, *client);
    answer = r.answer;
    v.require(trace_replays(r.trace, tools), "answer trace does not replay");
  } catch (const ReactError& e) {
    v.require(false, fmt::format("fixture question failed: {}", e.what()));
  }
  v.require(answer == std::to_string(expected), fmt::format("answer '{}' vs oracle {}", answer, expected));

  ScriptedChatClient lost(json{{"default", "Thought: look it up\nAction: bing[fouls]"}});
  try {
    run_react("How many fouls?", tools, lost);
    v.require(false, "unknown tool accepted");
  } catch (const ReactError& e) {
    v.require(e.kind() == ReactError::Kind::UnknownTool, fmt::format("unknown tool gave {}", to_string(e.kind())));
    v.require(e.trace().errors.size() == 2 && trace_replays(e.trace(), tools), "unknown-tool trace incomplete");
  }

  ScriptedChatClient looping(json{{"default", "Thought: again\nAction: stats[count where team = home]"}});
  try {
    run_react("How many rows?", tools, looping, {4, std::chrono::milliseconds{1000}});
    v.require(false, "budget not enforced");
  } catch (const ReactError& e) {
    v.require(e.kind() == ReactError::Kind::BudgetExhausted, fmt::format("loop gave {}", to_string(e.kind())));
    v.require(e.trace().steps.size() == 4 && trace_replays(e.trace(), tools), "budget trace does not replay");
  }
  v.detail = fmt::format("answer {} matches oracle {}", answer, expected);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"dtw exact and full-radius fastdtw vs path enumeration", dtw_oracle},
      {"fastdtw lower bound and radius monotonicity", fastdtw_bounds},
      {"assignment vs 120-permutation brute force", assignment_oracle},
      {"self-classification at k=1", self_classification},
      {"5-fold cross-validation, 10x15 clips, sigma 1.5, k=3", cross_validation},
      {"detector suite and cut-speed threshold", detector_suite},
      {"filter fixtures and idempotence", filter_fixtures},
      {"narrative round trip and prompt headers", narrative_round_trip},
      {"service contract with the scripted chat client", service_contract},
      {"ReAct oracle answer and error traces", react_agent},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.problems.push_back(fmt::format("exception: {}", e.what()));
    }
    std::cout << fmt::format("{} {:>2}. {} ({})\n", v.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail);
    for (const auto& p : v.problems) std::cout << "        " << p << "\n";
    std::cout.flush();
    failures += v.ok ? 0 : 1;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
