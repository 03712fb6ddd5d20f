#pragma once

// Brute-force unique-cause MC/DC checker. It sees only an expression and a
// list of vectors, never how the vectors were produced.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqrobin/error.hpp"
#include "eqrobin/expression.hpp"
#include "eqrobin/sbe.hpp"
#include "eqrobin/suite.hpp"

namespace eqrobin {

/// Two vectors (0-based suite indices, first < second) that differ only in
/// `condition`'s variable and produce different decisions.
struct IndependencePair {
  Condition condition;
  std::size_t first = 0;
  std::size_t second = 0;
  bool first_outcome = false;
  bool second_outcome = false;
};

struct ConditionCoverage {
  Condition condition;
  std::optional<IndependencePair> pair;
};

struct CoverageReport {
  std::vector<ConditionCoverage> conditions;
  std::size_t covered = 0;
  std::size_t total = 0;
  bool pass = false;

  double percent() const { return total == 0 ? 0.0 : 100.0 * static_cast<double>(covered) / static_cast<double>(total); }

  std::vector<Condition> uncovered() const {
    std::vector<Condition> out;
    for (const auto& c : conditions) {
      if (!c.pair) out.push_back(c.condition);
    }
    return out;
  }
};

namespace detail {

inline std::vector<bool> checked_outcomes(const Expression& e, std::span<const TestVector> tests) {
  std::vector<bool> out;
  out.reserve(tests.size());
  for (const auto& t : tests) out.push_back(evaluate(e, t.inputs));
  return out;
}

inline bool differs_only_in(const Assignment& a, const Assignment& b, const std::string& variable) {
  bool flipped = false;
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->second == ib->second) continue;
    if (ia->first != variable) return false;
    flipped = true;
  }
  return flipped;
}

inline std::optional<IndependencePair> search_pair(const Condition& condition, std::span<const TestVector> tests,
                                                   const std::vector<bool>& outcomes) {
  for (std::size_t i = 0; i < tests.size(); ++i) {
    for (std::size_t j = i + 1; j < tests.size(); ++j) {
      if (outcomes[i] == outcomes[j]) continue;
      if (differs_only_in(tests[i].inputs, tests[j].inputs, condition.variable)) {
        return IndependencePair{condition, i, j, outcomes[i], outcomes[j]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Lowest (i, j) pair in suite order demonstrating `condition`, which may be
/// given as a variable name or as its display label ("!b").
inline std::optional<IndependencePair> find_pair(const Expression& e, std::span<const TestVector> tests,
                                                 const std::string& condition) {
  const ConditionTable table = validate_sbe(e);
  const auto index = table.find(condition);
  if (!index) throw UnknownCondition(condition);
  const auto outcomes = detail::checked_outcomes(e, tests);
  return detail::search_pair(table[*index], tests, outcomes);
}

inline std::optional<IndependencePair> find_pair(const Expression& e, const TestSuite& s, const std::string& condition) {
  return find_pair(e, std::span<const TestVector>(s.tests), condition);
}

/// Runs the pair search for every condition in condition-table order.
/// Throws DomainError if a vector does not assign exactly e's variables.
inline CoverageReport check_unique_cause(const Expression& e, std::span<const TestVector> tests) {
  const ConditionTable table = validate_sbe(e);
  const auto outcomes = detail::checked_outcomes(e, tests);
  CoverageReport report;
  report.total = table.size();
  for (const auto& condition : table) {
    auto pair = detail::search_pair(condition, tests, outcomes);
    if (pair) ++report.covered;
    report.conditions.push_back({condition, std::move(pair)});
  }
  report.pass = report.covered == report.total;
  return report;
}

inline CoverageReport check_unique_cause(const Expression& e, const TestSuite& s) {
  return check_unique_cause(e, std::span<const TestVector>(s.tests));
}

/// Exactly N+1 vectors and full unique-cause coverage.
inline bool verify_minimal(const Expression& e, std::span<const TestVector> tests) {
  const std::size_t n = validate_sbe(e).size();
  if (tests.size() != n + 1) return false;
  return check_unique_cause(e, tests).pass;
}

inline bool verify_minimal(const Expression& e, const TestSuite& s) {
  return verify_minimal(e, std::span<const TestVector>(s.tests));
}

}  // namespace eqrobin
