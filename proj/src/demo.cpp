// SPDX-License-Identifier: Apache-2.0
#include "courtside/demo.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include <fmt/format.h>

namespace courtside {

namespace fs = std::filesystem;
using nlohmann::json;

DemoCorpus build_demo_corpus(const DemoParams& params) {
  DemoCorpus corpus;
  std::uint64_t seed = params.seed;
  for (TacticLabel label : kAllTactics) {
    PlayVariation v;
    v.direction = corpus.scripts.size() % 2 == 0 ? AttackDirection::Left : AttackDirection::Right;
    PlayScript script = tactic_play(label, v);
    SyntheticPlay play = generate_synthetic_play(script, params.fps, params.sigma, seed++);
    corpus.scripts.push_back(std::move(script));
    corpus.clips.push_back(std::move(play.clip));
  }
  return corpus;
}

namespace {

struct StatsQuestion {
  std::string question;
  std::string tool;
  std::string input;
};

const std::vector<StatsQuestion>& stats_questions() {
  static const std::vector<StatsQuestion> q = {
      {"How many fouls did the home team commit?", "stats", "sum(fouls) where team = home"},
      {"How many points did Marcus Hale score after halftime?", "stats",
       "sum(points) where player = \"Marcus Hale\" and quarter > 2"},
      {"What was the average number of rebounds per quarter for Leo Santos?", "stats",
       "mean(rebounds) where player = \"Leo Santos\""},
      {"Who is Victor Okafor?", "wikipedia", "Victor Okafor"},
      {"What is the Princeton offense?", "google_search", "Princeton offense basketball"},
      {"How many assists does Dion Carter average this season?", "statmuse", "Dion Carter assists per game"},
  };
  return q;
}

}  // namespace

json demo_chat_script(const std::vector<ClipAnalysis>& analyses, const std::map<TacticLabel, std::string>& descriptions) {
  json rules = json::array();
  rules.push_back({{"regex", R"(Observation: ([^\n]*)\s*$)"},
                   {"responses", json::array({"Thought: The last observation answers the question.\nFinal Answer: $1"})}});
  for (const auto& q : stats_questions())
    rules.push_back({{"match", "Question: " + q.question},
                     {"responses", json::array({fmt::format("Thought: I should look this up with {}.\nAction: {}[{}]", q.tool,
                                                            q.tool, q.input)})}});

  std::vector<const ClipAnalysis*> order;
  for (const auto& a : analyses)
    if (a.tactic && !a.filtered.empty()) order.push_back(&a);
  std::stable_sort(order.begin(), order.end(), [](const ClipAnalysis* x, const ClipAnalysis* y) {
    return x->filtered.size() > y->filtered.size();
  });
  for (const ClipAnalysis* a : order) {
    const TacticLabel label = a->tactic->label;
    const GameContext ctx = make_context(a->clip, label, descriptions.at(label), a->filtered, "");
    const std::string block = "[ACTION]\n" + ctx.actions_text + "\n";
    const auto& off = ctx.offense_players;
    const std::string third_summary =
        fmt::format("This possession is a {} set: {} and {} keep the ball moving until the defense breaks down.",
                    display_name(label), off.at(0), off.at(1));
    const std::string first_summary =
        fmt::format("{}: We are running {} now, stay with the timing.\n{}: I know my spot, get me the ball when it opens.",
                    off.at(0), display_name(label), off.at(1));
    rules.push_back({{"match", json::array({"Please briefly explain the question from casual fans.", block})},
                     {"responses", json::array({third_summary})}});
    rules.push_back({{"match", json::array({"I would like it to consist of only 2 to 4 conversations between players.", block})},
                     {"responses", json::array({first_summary})}});
    rules.push_back({{"match", json::array({"must be described in third person within 1 sentence.", block})},
                     {"responses", json::array({fallback_generate(ctx, Perspective::Third).text})}});
    rules.push_back({{"match", json::array({"conversation between two players if the action is the interaction", block})},
                     {"responses", json::array({fallback_generate(ctx, Perspective::First).text})}});
  }
  return {{"rules", std::move(rules)}, {"default", "I am not sure how to answer that."}};
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

std::string stats_csv(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> points(0, 9), rebounds(0, 4), assists(0, 3), fouls(0, 2);
  std::uniform_real_distribution<double> minutes(4.0, 12.0);
  std::string csv = "player,team,quarter,points,rebounds,assists,fouls,minutes\n";
  for (const auto& p : demo_rosters())
    for (int quarter = 1; quarter <= 4; ++quarter) {
      const int pts = points(rng), reb = rebounds(rng), ast = assists(rng), pf = fouls(rng);
      const double min = minutes(rng);
      csv += fmt::format("{},{},{},{},{},{},{},{:.1f}\n", p.full_name, to_string(p.team), quarter, pts, reb, ast, pf, min);
    }
  return csv;
}

}  // namespace

void write_demo_data(const fs::path& dir, const DemoParams& demo, const ReferenceBuildParams& ref_params) {
  const auto descriptions = load_tactic_descriptions(read_file((dir / "tactic_descriptions.json").string()));
  fs::create_directories(dir / "scripts");
  fs::create_directories(dir / "clips");

  const DemoCorpus corpus = build_demo_corpus(demo);
  for (std::size_t i = 0; i < corpus.clips.size(); ++i) {
    write_text(dir / "scripts" / (corpus.scripts[i].clip_id + ".json"), save_play_script(corpus.scripts[i]));
    write_text(dir / "clips" / (corpus.clips[i].clip_id + ".json"), save_clip(corpus.clips[i]));
  }
  const ReferenceSet refs = build_reference_set(ref_params);
  write_text(dir / "references.json", save_reference_set(refs));
  write_text(dir / "stats.csv", stats_csv(demo.seed));

  std::vector<ClipAnalysis> analyses;
  for (const auto& clip : corpus.clips) analyses.push_back(analyze_clip(clip, &refs, PipelineParams{}));
  write_text(dir / "mock_chat.json", demo_chat_script(analyses, descriptions).dump(2) + "\n");
}

}  // namespace courtside
