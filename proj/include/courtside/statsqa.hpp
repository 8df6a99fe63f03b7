// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "courtside/ingestion.hpp"
#include "courtside/narrative.hpp"

namespace courtside {

// ---- table queries ---------------------------------------------------------

enum class CompareOp { Eq, Ne, Lt, Gt };
enum class Aggregate { Count, Sum, Mean, List };

struct TableFilter {
  std::string column;
  CompareOp op = CompareOp::Eq;
  std::string value;  // raw text, typed against the column when the query runs
};

struct TableQuery {
  std::vector<TableFilter> filters;  // conjunctive
  Aggregate aggregate = Aggregate::Count;
  std::string column;  // unused for Count
};

using QueryResult = std::variant<std::int64_t, double, std::vector<Cell>>;

class QueryError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownColumn, TypeMismatch, EmptySelection };
  QueryError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

QueryResult query_stats(const StatsTable& table, const TableQuery& q);

/// "count", "sum(fouls)", "mean(points) where team = home and quarter > 2", "list(player)".
/// Values may be single- or double-quoted; "!=" is the not-equal operator.
TableQuery parse_table_query(std::string_view text);

std::string format_result(const QueryResult& r);
std::string format_cell(const Cell& c);

// ---- tools -----------------------------------------------------------------

class Tool {
 public:
  virtual ~Tool() = default;
  virtual std::string name() const = 0;
  virtual std::string description() const = 0;
  /// Observation text for the input. Tools report bad input inside the observation.
  virtual std::string invoke(const std::string& input) const = 0;
};

class ToolRegistry {
 public:
  /// Throws std::invalid_argument on a duplicate name.
  void add(std::shared_ptr<const Tool> tool);
  const Tool* find(std::string_view name) const;
  std::vector<std::string> names() const;
  bool empty() const { return tools_.empty(); }
  std::size_t size() const { return tools_.size(); }

 private:
  std::map<std::string, std::shared_ptr<const Tool>, std::less<>> tools_;
};

/// In-game table tool speaking the parse_table_query language.
class StatsTool : public Tool {
 public:
  explicit StatsTool(StatsTable table) : table_(std::move(table)) {}
  std::string name() const override { return "stats"; }
  std::string description() const override;
  std::string invoke(const std::string& input) const override;

 private:
  StatsTable table_;
};

/// Offline stand-in for an external search API: exact-input lookups from recorded triples.
class FixtureTool : public Tool {
 public:
  FixtureTool(std::string name, std::string description, std::map<std::string, std::string> answers)
      : name_(std::move(name)), description_(std::move(description)), answers_(std::move(answers)) {}
  std::string name() const override { return name_; }
  std::string description() const override { return description_; }
  std::string invoke(const std::string& input) const override;

 private:
  std::string name_;
  std::string description_;
  std::map<std::string, std::string> answers_;
};

/// Fixture file: [{"tool": "...", "input": "...", "observation": "..."}]. Returns one tool per
/// distinct name, in name order.
std::vector<std::shared_ptr<const Tool>> load_fixture_tools(std::string_view document);

/// Search-style HTTP adapter: GET <endpoint>?q=<input>, body returned as the observation.
struct HttpToolConfig {
  std::string name;
  std::string description;
  std::string endpoint;
  std::string key;
  std::chrono::milliseconds timeout{10000};
};
std::shared_ptr<const Tool> make_http_tool(const HttpToolConfig& config);

// ---- ReAct -----------------------------------------------------------------

struct ReactStep {
  std::string thought;
  std::string tool;
  std::string input;
  std::string observation;
};

struct ReactTrace {
  std::vector<ReactStep> steps;
  std::vector<std::string> errors;  // rejected model turns
  std::optional<std::string> final_answer;
};

class ReactError : public std::runtime_error {
 public:
  enum class Kind { UnknownTool, BudgetExhausted, Timeout, Client };
  ReactError(Kind kind, const std::string& message, ReactTrace trace)
      : std::runtime_error(message), kind_(kind), trace_(std::move(trace)) {}
  Kind kind() const { return kind_; }
  const ReactTrace& trace() const { return trace_; }

 private:
  Kind kind_;
  ReactTrace trace_;
};
std::string_view to_string(ReactError::Kind kind);

struct ReactOptions {
  int max_steps = 8;
  std::chrono::milliseconds timeout{30000};
};

struct ReactResult {
  std::string answer;
  ReactTrace trace;
};

/// Prompt for the next model turn: tool catalog, grammar, question and the trace so far.
std::string react_prompt(std::string_view question, const ToolRegistry& tools, const ReactTrace& trace);

/// Thought / Action / Observation loop. Each model turn is one step of the budget. An unknown
/// tool is reported back once; a second one fails.
ReactResult run_react(std::string_view question, const ToolRegistry& tools, ChatClient& client,
                      const ReactOptions& options = {});

nlohmann::json to_json(const ReactTrace& trace);

}  // namespace courtside
