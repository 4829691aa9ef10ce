#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "folres/blowup.hpp"

// Session scripts: one statement per line or ';', '#' comments.
//
//   space 3 vars x y z ring Z
//   distribution theta gens "d/dz + z*d/dx" dim=1
//   ideal I gens "x, y"
//   blowup center="x,y,z" chart=z
namespace folres::session {

struct Value {
  std::string text;
  bool quoted = false;
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const Value& a, const Value& b) { return a.text == b.text && a.quoted == b.quoted; }
};

struct Param {
  std::string key;
  Value value;

  friend bool operator==(const Param&, const Param&) = default;
};

struct Statement {
  std::string keyword;
  std::vector<Value> args;
  std::vector<Param> params;
  std::size_t line = 0;
  std::size_t column = 0;

  const Value* param(std::string_view key) const;
  /// Positions are not part of the identity of a statement.
  friend bool operator==(const Statement& a, const Statement& b) {
    return a.keyword == b.keyword && a.args == b.args && a.params == b.params;
  }
};

struct Script {
  std::vector<Statement> statements;

  friend bool operator==(const Script&, const Script&) = default;
};

/// Syntax and scope errors raise ParseError with line and column.
Script parse_session(std::string_view text);

std::string print_statement(const Statement& s);
/// One statement per line; parse_session(print_session(s)) == s.
std::string print_session(const Script& s);

struct StepReport {
  std::size_t index = 0;
  std::string statement;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  /// "pass", "fail", "none" or "error".
  std::string verdict = "none";
  std::vector<std::string> flags;
};

struct SessionResult {
  std::vector<StepReport> steps;
  bool asserts_passed = true;
  std::optional<std::string> error;
};

/// Executes statements in order and stops at the first error, which becomes
/// the last step with verdict "error".
SessionResult run_session(const Script& script);

nlohmann::ordered_json to_json(const SessionResult& result);
std::string render_text(const SessionResult& result);

struct Suggestion {
  std::optional<BlowupCenter> center;
  std::string reason;
};

/// Monomial ideals only: the smallest coordinate subspace (lexicographic
/// tie-break) on which I has maximal order, among admissible ones.
Suggestion suggest_center(const Ideal& i, const DistributionGens& theta);

}  // namespace folres::session
