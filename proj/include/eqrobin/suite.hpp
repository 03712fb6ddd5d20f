#pragma once

// Minimal (N+1) unique-cause MC/DC suites for one expression structure, the
// baseline normalization, and whole-family generation.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "eqrobin/detail/parallel.hpp"
#include "eqrobin/expression.hpp"
#include "eqrobin/sbe.hpp"
#include "eqrobin/variants.hpp"

namespace eqrobin {

struct TestSuite {
  Expression expression;
  ConditionTable conditions;
  std::vector<TestVector> tests;

  std::size_t size() const noexcept { return tests.size(); }
};

/// A retained suite and the position of its variant in the variant family.
struct SuiteMember {
  std::size_t variant_index = 0;
  TestSuite suite;

  const Expression& variant() const noexcept { return suite.expression; }
};

struct SuiteFamily {
  Expression source;
  /// Suites that differ as sets from every earlier one, in variant order.
  std::vector<SuiteMember> members;
  std::size_t variant_count = 0;
  std::uint64_t total_variants = 0;
  bool truncated = false;
  VariantOptions options;

  std::size_t distinct_count() const noexcept { return members.size(); }
};

/// Reorders the operands of every maximal same-operator chain by descending
/// leaf count (stable, so ties keep their left-to-right order) and rebuilds
/// each chain left-associated, bottom-up.
///
/// "a && (!b || !c) && d || e" becomes "(!b || !c) && a && d || e".
inline Expression baseline_normalize(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Variable:
      return e;
    case NodeKind::Not:
      return Expression::negation(baseline_normalize(e.operand()));
    default:
      break;
  }
  auto operands = detail::chain_operands(e);
  for (auto& op : operands) op = baseline_normalize(op);
  std::stable_sort(operands.begin(), operands.end(), [](const Expression& a, const Expression& b) {
    return a.leaf_count() > b.leaf_count();
  });
  Expression out = operands.front();
  for (std::size_t i = 1; i < operands.size(); ++i) out = Expression::binary(e.kind(), out, operands[i]);
  return out;
}

namespace detail {

struct VectorLists {
  std::vector<Assignment> when_true;
  std::vector<Assignment> when_false;
};

inline Assignment merged(const Assignment& a, const Assignment& b) {
  Assignment out = a;
  out.insert(b.begin(), b.end());
  return out;
}

// `primary` is the list whose both sides are built from representatives of the
// other outcome: for And that is the true list, for Or the false list.
inline void combine(const std::vector<Assignment>& primary_left, const std::vector<Assignment>& primary_right,
                    const std::vector<Assignment>& other_left, const std::vector<Assignment>& other_right,
                    std::vector<Assignment>& primary, std::vector<Assignment>& other) {
  const Assignment& rep_left = primary_left.front();
  const Assignment& rep_right = primary_right.front();
  const Assignment both = merged(rep_left, rep_right);

  for (const auto& p : primary_left) primary.push_back(merged(p, rep_right));
  for (const auto& p : primary_right) {
    Assignment candidate = merged(rep_left, p);
    if (candidate != both) primary.push_back(std::move(candidate));
  }
  for (const auto& o : other_left) other.push_back(merged(o, rep_right));
  for (const auto& o : other_right) other.push_back(merged(rep_left, o));
}

inline VectorLists build_vectors(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Variable:
      return {{Assignment{{e.name(), true}}}, {Assignment{{e.name(), false}}}};
    case NodeKind::Not: {
      VectorLists inner = build_vectors(e.operand());
      return {std::move(inner.when_false), std::move(inner.when_true)};
    }
    default:
      break;
  }
  const VectorLists l = build_vectors(e.left());
  const VectorLists r = build_vectors(e.right());
  VectorLists out;
  if (e.kind() == NodeKind::And) {
    combine(l.when_true, r.when_true, l.when_false, r.when_false, out.when_true, out.when_false);
  } else {
    combine(l.when_false, r.when_false, l.when_true, r.when_true, out.when_false, out.when_true);
  }
  return out;
}

/// Order-insensitive identity of a suite's vectors.
inline std::string suite_set_key(const TestSuite& s) {
  std::vector<std::string> rows;
  rows.reserve(s.tests.size());
  for (const auto& t : s.tests) {
    std::string row;
    for (const auto& [name, value] : t.inputs) {
      row += name;
      row += value ? "=1;" : "=0;";
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  std::string key;
  for (const auto& r : rows) {
    key += r;
    key += '\n';
  }
  return key;
}

}  // namespace detail

/// Builds the N+1 suite for `e` exactly as structured (no re-sorting).
///
/// Each node yields an ordered pair of lists (vectors making it true, vectors
/// making it false). An And node extends every left vector with the first true
/// vector of the right side and vice versa, dropping the duplicate
/// representative pair from the true list; Or is the dual over false vectors.
/// The suite is the root's true list followed by its false list.
inline TestSuite generate_suite(const Expression& e) {
  ConditionTable table = validate_sbe(e);
  detail::VectorLists lists = detail::build_vectors(e);
  TestSuite suite{e, std::move(table), {}};
  suite.tests.reserve(lists.when_true.size() + lists.when_false.size());
  for (auto& v : lists.when_true) suite.tests.push_back({std::move(v), true});
  for (auto& v : lists.when_false) suite.tests.push_back({std::move(v), false});
  return suite;
}

/// Variants of `e`, one suite per variant, then suites equal as sets to an
/// earlier one are dropped. Suite construction fans out over `jobs` threads;
/// the result does not depend on `jobs`.
inline SuiteFamily generate_family(const Expression& e, const VariantOptions& opts = {}, unsigned jobs = 1) {
  VariantFamily variants = generate_variants(e, opts);
  std::vector<std::optional<TestSuite>> suites(variants.members.size());
  detail::parallel_for(suites.size(), jobs, [&](std::size_t i) { suites[i] = generate_suite(variants.members[i]); });

  SuiteFamily family{e, {}, variants.members.size(), variants.total_variants, variants.truncated, opts};
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    if (seen.insert(detail::suite_set_key(*suites[i])).second) {
      family.members.push_back({i, std::move(*suites[i])});
    }
  }
  return family;
}

}  // namespace eqrobin
