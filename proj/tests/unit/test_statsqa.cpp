// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "courtside/statsqa.hpp"

namespace courtside {
namespace {

using nlohmann::json;

const char* kBox =
    "player,team,quarter,points,fouls,minutes\n"
    "Ann Lee,home,1,4,1,6.5\n"
    "Ann Lee,home,2,7,2,8\n"
    "Bo Park,home,1,2,0,5.25\n"
    "Bo Park,home,2,0,3,4\n"
    "Cy Okoro,away,1,9,1,10\n"
    "Cy Okoro,away,2,5,1,9.5\n";

StatsTable box() { return load_stats_table(kBox); }

std::string run(std::string_view q) { return format_result(query_stats(box(), parse_table_query(q))); }

QueryError::Kind error_kind(std::string_view q) {
  try {
    query_stats(box(), parse_table_query(q));
  } catch (const QueryError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "query succeeded: " << q;
  return QueryError::Kind::Syntax;
}

TEST(Query, Aggregates) {
  EXPECT_EQ(run("count"), "6");
  EXPECT_EQ(run("sum(fouls) where player = 'Ann Lee'"), "3");
  EXPECT_EQ(run("sum(points) where team = home and quarter > 1"), "7");
  EXPECT_EQ(run("mean(minutes) where player = \"Cy Okoro\""), "9.75");
  EXPECT_EQ(run("list(player) where points > 4"), "Ann Lee, Cy Okoro, Cy Okoro");
  EXPECT_EQ(run("count where team != home"), "2");
  EXPECT_EQ(run("COUNT where quarter < 2"), "3");
  EXPECT_EQ(run("sum(fouls) where player = Nobody"), "0");
}

TEST(Query, SumMatchesARowLoopOnRandomFilters) {
  const StatsTable t = box();
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> threshold(0, 9);
  for (int i = 0; i < 50; ++i) {
    const int k = threshold(rng);
    std::int64_t expected = 0;
    for (const auto& row : t.rows)
      if (std::get<std::int64_t>(row[3]) > k) expected += std::get<std::int64_t>(row[4]);
    EXPECT_EQ(run("sum(fouls) where points > " + std::to_string(k)), std::to_string(expected));
  }
}

TEST(Query, ErrorsByKind) {
  EXPECT_EQ(error_kind("median(points)"), QueryError::Kind::Syntax);
  EXPECT_EQ(error_kind("sum"), QueryError::Kind::Syntax);
  EXPECT_EQ(error_kind("count where points"), QueryError::Kind::Syntax);
  EXPECT_EQ(error_kind("sum(steals)"), QueryError::Kind::UnknownColumn);
  EXPECT_EQ(error_kind("count where blocks = 1"), QueryError::Kind::UnknownColumn);
  EXPECT_EQ(error_kind("sum(player)"), QueryError::Kind::TypeMismatch);
  EXPECT_EQ(error_kind("count where player > 3"), QueryError::Kind::TypeMismatch);
  EXPECT_EQ(error_kind("count where points = many"), QueryError::Kind::TypeMismatch);
  EXPECT_EQ(error_kind("mean(points) where quarter > 4"), QueryError::Kind::EmptySelection);
}

TEST(Tools, StatsToolReportsErrorsInTheObservation) {
  const StatsTool tool(box());
  EXPECT_EQ(tool.invoke("sum(points) where player = 'Bo Park'"), "2");
  EXPECT_EQ(tool.invoke("sum(steals)").rfind("Error: unknown column", 0), 0u);
  EXPECT_NE(tool.description().find("fouls (int)"), std::string::npos);
}

TEST(Tools, FixtureToolsAndRegistry) {
  const auto tools = load_fixture_tools(R"([
    {"tool": "wikipedia", "input": "Zone defense", "observation": "Guards areas, not players."},
    {"tool": "google_search", "input": " pick and roll ", "observation": "A two-player action."}
  ])");
  ASSERT_EQ(tools.size(), 2u);
  EXPECT_EQ(tools[0]->name(), "google_search");
  EXPECT_EQ(tools[0]->invoke("pick and roll"), "A two-player action.");
  EXPECT_EQ(tools[1]->invoke("Man defense"), "No results found.");
  ToolRegistry reg;
  for (const auto& t : tools) reg.add(t);
  EXPECT_THROW(reg.add(tools[0]), std::invalid_argument);
  EXPECT_EQ(reg.names(), (std::vector<std::string>{"google_search", "wikipedia"}));
  EXPECT_EQ(reg.find("bing"), nullptr);
  EXPECT_THROW(load_fixture_tools(R"([{"tool": "x"}])"), std::invalid_argument);
}

ToolRegistry stats_registry() {
  ToolRegistry reg;
  reg.add(std::make_shared<StatsTool>(box()));
  return reg;
}

TEST(React, ToolCallThenFinalAnswer) {
  ScriptedChatClient client(json::parse(R"js({
    "rules": [
      {"regex": "Observation: (\\d+)\\n", "responses": ["Thought: done\nFinal Answer: Ann Lee committed $1 fouls."]}
    ],
    "default": "Thought: I should add up her fouls.\nAction: stats[sum(fouls) where player = 'Ann Lee']"
  })js"));
  const ReactResult r = run_react("How many fouls did Ann Lee commit?", stats_registry(), client);
  EXPECT_EQ(r.answer, "Ann Lee committed 3 fouls.");
  ASSERT_EQ(r.trace.steps.size(), 1u);
  EXPECT_EQ(r.trace.steps[0].tool, "stats");
  EXPECT_EQ(r.trace.steps[0].observation, "3");
  EXPECT_EQ(r.trace.steps[0].thought, "I should add up her fouls.");
  EXPECT_EQ(client.prompts().size(), 2u);
  EXPECT_NE(client.prompts()[1].find("Observation: 3"), std::string::npos);
  EXPECT_EQ(to_json(r.trace)["final_answer"], "Ann Lee committed 3 fouls.");
}

ReactError react_failure(const json& script, const ReactOptions& options = {}) {
  ScriptedChatClient client(script);
  try {
    run_react("Who scored most?", stats_registry(), client, options);
  } catch (const ReactError& e) {
    return e;
  }
  ADD_FAILURE() << "react succeeded";
  return ReactError(ReactError::Kind::Client, "", {});
}

TEST(React, UnknownToolIsReportedOnceThenFails) {
  const ReactError e = react_failure({{"default", "Thought: search\nAction: bing[top scorer]"}});
  EXPECT_EQ(e.kind(), ReactError::Kind::UnknownTool);
  EXPECT_EQ(e.trace().errors.size(), 2u);
  EXPECT_NE(e.trace().errors[0].find("available: stats"), std::string::npos);
}

TEST(React, UnknownToolRecoversWhenTheModelCorrectsItself) {
  ScriptedChatClient client(json::parse(R"js({
    "rules": [
      {"match": "Observation: Error: unknown tool", "responses": ["Final Answer: Cy Okoro"]}
    ],
    "default": "Action: bing[top scorer]"
  })js"));
  const ReactResult r = run_react("Who scored most?", stats_registry(), client);
  EXPECT_EQ(r.answer, "Cy Okoro");
  EXPECT_EQ(r.trace.errors.size(), 1u);
}

TEST(React, BudgetMalformedRepliesAndClientFailures) {
  const ReactError budget =
      react_failure({{"default", "Thought: again\nAction: stats[count]"}}, ReactOptions{3, std::chrono::milliseconds{50}});
  EXPECT_EQ(budget.kind(), ReactError::Kind::BudgetExhausted);
  EXPECT_EQ(budget.trace().steps.size(), 3u);

  const ReactError rambling = react_failure({{"default", "I am not sure what to do."}}, ReactOptions{2, {}});
  EXPECT_EQ(rambling.kind(), ReactError::Kind::BudgetExhausted);
  EXPECT_EQ(rambling.trace().errors.size(), 2u);

  EXPECT_EQ(react_failure({{"rules", {{{"match", "Question"}, {"responses", {{{"timeout", true}}}}}}}}).kind(),
            ReactError::Kind::Timeout);
  EXPECT_EQ(react_failure({{"rules", json::array()}}).kind(), ReactError::Kind::Client);
  EXPECT_EQ(to_string(ReactError::Kind::BudgetExhausted), "budget_exhausted");
}

TEST(React, NeedsATool) {
  ScriptedChatClient client(json{{"default", "Final Answer: x"}});
  EXPECT_THROW(run_react("q", ToolRegistry{}, client), std::invalid_argument);
}

}  // namespace
}  // namespace courtside
