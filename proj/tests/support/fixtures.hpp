#pragma once

// Worked-example expressions and the two reference suites, transcribed
// row-for-row in their literal columns.

#include <string>
#include <vector>

#include "eqrobin/sbe.hpp"

namespace eqrobin::testing {

inline const std::string kExprD = "a && (!b || !c) && d || e";
inline const std::string kExprBaseline = "(!b || !c) && a && d || e";
inline const std::string kExprRearranged = "(a && d) && (!b || !c) || e";

/// Builds vectors from rows of literal values; "!x" columns hold !x.
inline std::vector<TestVector> from_literals(const std::vector<std::string>& columns,
                                             const std::vector<std::vector<bool>>& rows) {
  std::vector<TestVector> out;
  for (const auto& row : rows) {
    TestVector v;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const bool negated = columns[c].front() == '!';
      v.inputs[negated ? columns[c].substr(1) : columns[c]] = negated ? !row[c] : row[c];
    }
    out.push_back(std::move(v));
  }
  return out;
}

constexpr bool T = true;
constexpr bool F = false;

// Baseline suite for (!b || !c) && a && d || e; last column is the outcome.
inline const std::vector<std::vector<bool>> kTable1 = {
    {F, F, T, T, F, F},
    {F, T, T, T, F, T},
    {T, F, T, T, F, T},
    {F, T, F, T, F, F},
    {F, T, T, F, F, F},
    {F, T, T, F, T, T},
};
inline const std::vector<std::string> kTable1Columns = {"!b", "!c", "a", "d", "e"};

// Suite for (a && d) && (!b || !c) || e.
inline const std::vector<std::vector<bool>> kTable2 = {
    {T, T, T, F, F, T},
    {T, F, T, F, F, F},
    {F, T, T, F, F, F},
    {T, T, F, F, F, F},
    {T, T, F, T, F, T},
    {T, T, F, F, T, T},
};
inline const std::vector<std::string> kTable2Columns = {"a", "d", "!b", "!c", "e"};

inline std::vector<std::vector<bool>> inputs_only(const std::vector<std::vector<bool>>& rows) {
  std::vector<std::vector<bool>> out;
  for (const auto& r : rows) out.emplace_back(r.begin(), r.end() - 1);
  return out;
}

inline std::vector<TestVector> table1() { return from_literals(kTable1Columns, inputs_only(kTable1)); }
inline std::vector<TestVector> table2() { return from_literals(kTable2Columns, inputs_only(kTable2)); }

}  // namespace eqrobin::testing
