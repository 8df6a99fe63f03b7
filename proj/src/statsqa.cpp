// SPDX-License-Identifier: Apache-2.0
#include "courtside/statsqa.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <regex>

#include <fmt/format.h>

namespace courtside {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::optional<double> as_number(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

double numeric(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::get<double>(c);
}

std::size_t require_column(const StatsTable& t, const std::string& name) {
  const auto idx = t.column_index(name);
  if (!idx) {
    std::vector<std::string> names;
    for (const auto& c : t.columns) names.push_back(c.name);
    throw QueryError(QueryError::Kind::UnknownColumn,
                     fmt::format("unknown column '{}' (columns: {})", name, fmt::join(names, ", ")));
  }
  return *idx;
}

using RowPredicate = std::function<bool(const std::vector<Cell>&)>;

RowPredicate compile_filter(const StatsTable& t, const TableFilter& f) {
  const std::size_t col = require_column(t, f.column);
  const ColumnType type = t.columns[col].type;
  if (type == ColumnType::String) {
    if (f.op == CompareOp::Lt || f.op == CompareOp::Gt)
      throw QueryError(QueryError::Kind::TypeMismatch,
                       fmt::format("'<' and '>' need a numeric column; '{}' holds text", f.column));
    const bool eq = f.op == CompareOp::Eq;
    return [col, eq, value = f.value](const std::vector<Cell>& row) {
      return (std::get<std::string>(row[col]) == value) == eq;
    };
  }
  const auto v = as_number(f.value);
  if (!v)
    throw QueryError(QueryError::Kind::TypeMismatch,
                     fmt::format("column '{}' is numeric but '{}' is not a number", f.column, f.value));
  return [col, op = f.op, x = *v](const std::vector<Cell>& row) {
    const double cell = numeric(row[col]);
    switch (op) {
      case CompareOp::Eq: return cell == x;
      case CompareOp::Ne: return cell != x;
      case CompareOp::Lt: return cell < x;
      case CompareOp::Gt: return cell > x;
    }
    return false;
  };
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

QueryResult query_stats(const StatsTable& table, const TableQuery& q) {
  std::vector<RowPredicate> preds;
  for (const auto& f : q.filters) preds.push_back(compile_filter(table, f));

  std::optional<std::size_t> col;
  if (q.aggregate != Aggregate::Count) {
    col = require_column(table, q.column);
    if ((q.aggregate == Aggregate::Sum || q.aggregate == Aggregate::Mean) &&
        table.columns[*col].type == ColumnType::String)
      throw QueryError(QueryError::Kind::TypeMismatch, fmt::format("cannot add up text column '{}'", q.column));
  }

  std::vector<const std::vector<Cell>*> selected;
  for (const auto& row : table.rows)
    if (std::all_of(preds.begin(), preds.end(), [&](const RowPredicate& p) { return p(row); })) selected.push_back(&row);

  switch (q.aggregate) {
    case Aggregate::Count:
      return static_cast<std::int64_t>(selected.size());
    case Aggregate::List: {
      std::vector<Cell> out;
      for (const auto* row : selected) out.push_back((*row)[*col]);
      return out;
    }
    case Aggregate::Sum: {
      if (table.columns[*col].type == ColumnType::Int) {
        std::int64_t total = 0;
        for (const auto* row : selected) total += std::get<std::int64_t>((*row)[*col]);
        return total;
      }
      double total = 0.0;
      for (const auto* row : selected) total += numeric((*row)[*col]);
      return total;
    }
    case Aggregate::Mean: {
      if (selected.empty())
        throw QueryError(QueryError::Kind::EmptySelection, fmt::format("mean({}) of an empty selection", q.column));
      double total = 0.0;
      for (const auto* row : selected) total += numeric((*row)[*col]);
      return total / static_cast<double>(selected.size());
    }
  }
  throw QueryError(QueryError::Kind::Syntax, "unknown aggregate");
}

TableQuery parse_table_query(std::string_view text) {
  static const std::regex head(R"(^\s*(count|sum|mean|list)\s*(?:\(\s*([A-Za-z_][A-Za-z0-9_]*)?\s*\))?\s*(?:where\s+(.*))?$)",
                               std::regex::icase);
  static const std::regex cond(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(!=|=|<|>)\s*(.+?)\s*$)");
  static const std::regex and_split(R"(\s+and\s+)", std::regex::icase);

  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, head))
    throw QueryError(QueryError::Kind::Syntax,
                     fmt::format("cannot parse query '{}'; expected e.g. sum(fouls) where player = A", trim(s)));
  TableQuery q;
  std::string agg = m[1].str();
  std::transform(agg.begin(), agg.end(), agg.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  q.aggregate = agg == "count" ? Aggregate::Count : agg == "sum" ? Aggregate::Sum : agg == "mean" ? Aggregate::Mean : Aggregate::List;
  q.column = m[2].str();
  if (q.aggregate != Aggregate::Count && q.column.empty())
    throw QueryError(QueryError::Kind::Syntax, fmt::format("{} needs a column, e.g. {}(points)", agg, agg));

  if (m[3].matched) {
    const std::string where = m[3].str();
    for (std::sregex_token_iterator it(where.begin(), where.end(), and_split, -1), end; it != end; ++it) {
      const std::string part = it->str();
      std::smatch c;
      if (!std::regex_match(part, c, cond))
        throw QueryError(QueryError::Kind::Syntax, fmt::format("cannot parse condition '{}'", trim(part)));
      const std::string op = c[2].str();
      q.filters.push_back({c[1].str(),
                           op == "=" ? CompareOp::Eq : op == "!=" ? CompareOp::Ne : op == "<" ? CompareOp::Lt : CompareOp::Gt,
                           unquote(c[3].str())});
    }
  }
  return q;
}

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return fmt::format("{}", *d);
  return std::get<std::string>(c);
}

std::string format_result(const QueryResult& r) {
  if (const auto* i = std::get_if<std::int64_t>(&r)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&r)) return fmt::format("{}", *d);
  std::vector<std::string> parts;
  for (const auto& c : std::get<std::vector<Cell>>(r)) parts.push_back(format_cell(c));
  return fmt::format("{}", fmt::join(parts, ", "));
}

// ---- tools -----------------------------------------------------------------

void ToolRegistry::add(std::shared_ptr<const Tool> tool) {
  if (!tool) throw std::invalid_argument("null tool");
  const std::string name = tool->name();
  if (tools_.count(name)) throw std::invalid_argument(fmt::format("duplicate tool name '{}'", name));
  tools_.emplace(name, std::move(tool));
}

const Tool* ToolRegistry::find(std::string_view name) const {
  auto it = tools_.find(name);
  return it == tools_.end() ? nullptr : it->second.get();
}

std::vector<std::string> ToolRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : tools_) out.push_back(name);
  return out;
}

std::string StatsTool::description() const {
  std::vector<std::string> cols;
  for (const auto& c : table_.columns) cols.push_back(fmt::format("{} ({})", c.name, to_string(c.type)));
  return fmt::format(
      "Box-score table for this game. Input: count | sum(col) | mean(col) | list(col), optionally followed by "
      "'where col = value and col > value'. Columns: {}",
      fmt::join(cols, ", "));
}

std::string StatsTool::invoke(const std::string& input) const {
  try {
    return format_result(query_stats(table_, parse_table_query(input)));
  } catch (const QueryError& e) {
    return fmt::format("Error: {}", e.what());
  }
}

std::string FixtureTool::invoke(const std::string& input) const {
  auto it = answers_.find(trim(input));
  return it == answers_.end() ? std::string("No results found.") : it->second;
}

std::vector<std::shared_ptr<const Tool>> load_fixture_tools(std::string_view document) {
  static const std::map<std::string, std::string> known = {
      {"google_search", "Web search. Input: a search query."},
      {"wikipedia", "Encyclopedia lookup. Input: an article title or topic."},
      {"statmuse", "Sports statistics search. Input: a natural-language stats question."},
  };
  const json doc = json::parse(document);
  if (!doc.is_array()) throw std::invalid_argument("tool fixture must be a JSON array");
  std::map<std::string, std::map<std::string, std::string>> by_tool;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    if (!e.is_object() || !e.contains("tool") || !e.contains("input") || !e.contains("observation"))
      throw std::invalid_argument(fmt::format("fixture entry {} needs tool, input and observation", i));
    by_tool[e.at("tool").get<std::string>()][trim(e.at("input").get<std::string>())] = e.at("observation").get<std::string>();
  }
  std::vector<std::shared_ptr<const Tool>> out;
  for (auto& [name, answers] : by_tool) {
    auto it = known.find(name);
    const std::string desc = it != known.end() ? it->second : "Recorded lookup tool.";
    out.push_back(std::make_shared<FixtureTool>(name, desc, std::move(answers)));
  }
  return out;
}

// ---- ReAct -----------------------------------------------------------------

std::string_view to_string(ReactError::Kind kind) {
  switch (kind) {
    case ReactError::Kind::UnknownTool: return "unknown_tool";
    case ReactError::Kind::BudgetExhausted: return "budget_exhausted";
    case ReactError::Kind::Timeout: return "timeout";
    case ReactError::Kind::Client: return "client_error";
  }
  return "unknown";
}

std::string react_prompt(std::string_view question, const ToolRegistry& tools, const ReactTrace& trace) {
  std::string p = "Answer the question about the basketball game. You can use these tools:\n";
  for (const auto& name : tools.names()) p += fmt::format("- {}: {}\n", name, tools.find(name)->description());
  p += fmt::format(
      "\nUse exactly this format:\nThought: your reasoning\nAction: tool_name[tool input]\n"
      "After each action you receive an Observation. When you know the answer, reply with\n"
      "Final Answer: the answer\n\nQuestion: {}\n",
      question);
  for (const auto& s : trace.steps)
    p += fmt::format("Thought: {}\nAction: {}[{}]\nObservation: {}\n", s.thought, s.tool, s.input, s.observation);
  if (!trace.errors.empty()) p += fmt::format("Observation: Error: {}\n", trace.errors.back());
  return p;
}

ReactResult run_react(std::string_view question, const ToolRegistry& tools, ChatClient& client,
                      const ReactOptions& options) {
  if (tools.empty()) throw std::invalid_argument("ReAct needs at least one tool");
  static const std::regex final_re(R"(Final Answer:\s*([\s\S]*?)\s*$)");
  static const std::regex action_re(R"(Action:\s*([A-Za-z0-9_\-]+)\s*\[([\s\S]*)\])");
  static const std::regex thought_re(R"(Thought:\s*([\s\S]*?)\s*(?:Action:|$))");

  ReactTrace trace;
  int unknown_tools = 0;
  for (int step = 0; step < options.max_steps; ++step) {
    std::string reply;
    try {
      reply = client.complete(react_prompt(question, tools, trace), options.timeout);
    } catch (const ChatTimeout& e) {
      throw ReactError(ReactError::Kind::Timeout, e.what(), trace);
    } catch (const ChatError& e) {
      throw ReactError(ReactError::Kind::Client, e.what(), trace);
    }

    std::smatch m;
    if (std::regex_search(reply, m, final_re)) {
      trace.final_answer = m[1].str();
      return {*trace.final_answer, std::move(trace)};
    }
    if (!std::regex_search(reply, m, action_re)) {
      trace.errors.push_back("reply has neither 'Action: tool[input]' nor 'Final Answer:'");
      continue;
    }
    const std::string tool_name = m[1].str();
    const std::string input = trim(m[2].str());
    const Tool* tool = tools.find(tool_name);
    if (tool == nullptr) {
      trace.errors.push_back(fmt::format("unknown tool '{}'; available: {}", tool_name, fmt::join(tools.names(), ", ")));
      if (++unknown_tools > 1)
        throw ReactError(ReactError::Kind::UnknownTool, fmt::format("model named unknown tool '{}'", tool_name), trace);
      continue;
    }
    std::smatch t;
    std::string thought = std::regex_search(reply, t, thought_re) ? t[1].str() : std::string();
    trace.steps.push_back({std::move(thought), tool_name, input, tool->invoke(input)});
  }
  throw ReactError(ReactError::Kind::BudgetExhausted,
                   fmt::format("no final answer within {} steps", options.max_steps), std::move(trace));
}

json to_json(const ReactTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps)
    steps.push_back({{"thought", s.thought}, {"tool", s.tool}, {"input", s.input}, {"observation", s.observation}});
  return {{"steps", std::move(steps)},
          {"errors", trace.errors},
          {"final_answer", trace.final_answer ? json(*trace.final_answer) : json(nullptr)}};
}

}  // namespace courtside
