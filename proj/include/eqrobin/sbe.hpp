#pragma once

// Singular boolean expressions: condition tables, test vectors, evaluation and
// truth-table equivalence.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eqrobin/error.hpp"
#include "eqrobin/expression.hpp"

namespace eqrobin {

/// One condition of an SBE. `negated` is set when the leaf sits directly under
/// an odd number of NOTs; the label then reads "!name".
struct Condition {
  std::string variable;
  bool negated = false;

  std::string label() const { return negated ? "!" + variable : variable; }
  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Conditions in left-to-right leaf order.
class ConditionTable {
 public:
  ConditionTable() = default;
  explicit ConditionTable(std::vector<Condition> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Condition>& entries() const noexcept { return entries_; }
  const Condition& operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& c : entries_) out.push_back(c.label());
    return out;
  }

  std::vector<std::string> variables() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& c : entries_) out.push_back(c.variable);
    return out;
  }

  /// Index of the condition whose variable or label equals `name`.
  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].variable == name || entries_[i].label() == name) return i;
    }
    return std::nullopt;
  }

 private:
  std::vector<Condition> entries_;
};

using Assignment = std::map<std::string, bool, std::less<>>;

/// A total assignment plus the decision outcome once it has been evaluated.
struct TestVector {
  Assignment inputs;
  std::optional<bool> outcome;

  /// Vectors compare by their inputs only.
  friend bool operator==(const TestVector& a, const TestVector& b) { return a.inputs == b.inputs; }
};

namespace detail {

inline void collect_conditions(const Expression& e, std::size_t nots, std::vector<Condition>& out) {
  switch (e.kind()) {
    case NodeKind::Variable:
      out.push_back({e.name(), nots % 2 == 1});
      return;
    case NodeKind::Not:
      collect_conditions(e.operand(), nots + 1, out);
      return;
    case NodeKind::And:
    case NodeKind::Or:
      collect_conditions(e.left(), 0, out);
      collect_conditions(e.right(), 0, out);
      return;
  }
}

inline void collect_variables(const Expression& e, std::vector<std::string>& out) {
  switch (e.kind()) {
    case NodeKind::Variable:
      out.push_back(e.name());
      return;
    case NodeKind::Not:
      collect_variables(e.operand(), out);
      return;
    default:
      collect_variables(e.left(), out);
      collect_variables(e.right(), out);
      return;
  }
}

inline bool evaluate_unchecked(const Expression& e, const Assignment& v) {
  switch (e.kind()) {
    case NodeKind::Variable:
      return v.find(e.name())->second;
    case NodeKind::Not:
      return !evaluate_unchecked(e.operand(), v);
    case NodeKind::And:
      return evaluate_unchecked(e.left(), v) && evaluate_unchecked(e.right(), v);
    case NodeKind::Or:
      return evaluate_unchecked(e.left(), v) || evaluate_unchecked(e.right(), v);
  }
  return false;
}

/// Postfix program over bit positions, for evaluating many assignments fast.
class CompiledExpression {
 public:
  CompiledExpression(const Expression& e, const std::vector<std::string>& order) {
    for (std::size_t i = 0; i < order.size(); ++i) index_[order[i]] = i;
    emit(e);
  }

  bool operator()(std::uint64_t bits) const {
    std::vector<bool>& stack = scratch_;
    stack.clear();
    for (const auto& op : program_) {
      switch (op.kind) {
        case NodeKind::Variable:
          stack.push_back(((bits >> op.index) & 1U) != 0);
          break;
        case NodeKind::Not:
          stack.back() = !stack.back();
          break;
        case NodeKind::And: {
          const bool rhs = stack.back();
          stack.pop_back();
          stack.back() = stack.back() && rhs;
          break;
        }
        case NodeKind::Or: {
          const bool rhs = stack.back();
          stack.pop_back();
          stack.back() = stack.back() || rhs;
          break;
        }
      }
    }
    return stack.back();
  }

 private:
  struct Op {
    NodeKind kind;
    std::size_t index = 0;
  };

  void emit(const Expression& e) {
    switch (e.kind()) {
      case NodeKind::Variable: {
        auto it = index_.find(e.name());
        if (it == index_.end()) throw DomainError("variable '" + e.name() + "' is not in the variable order");
        program_.push_back({NodeKind::Variable, it->second});
        return;
      }
      case NodeKind::Not:
        emit(e.operand());
        program_.push_back({NodeKind::Not});
        return;
      default:
        emit(e.left());
        emit(e.right());
        program_.push_back({e.kind()});
        return;
    }
  }

  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<Op> program_;
  mutable std::vector<bool> scratch_;
};

}  // namespace detail

/// Variable names in leaf order (duplicates kept).
inline std::vector<std::string> leaf_variables(const Expression& e) {
  std::vector<std::string> out;
  detail::collect_variables(e, out);
  return out;
}

inline std::set<std::string, std::less<>> variable_set(const Expression& e) {
  auto leaves = leaf_variables(e);
  return {leaves.begin(), leaves.end()};
}

/// Builds the condition table, or throws SbeViolation naming the first
/// variable (in leaf order) that occurs twice.
inline ConditionTable validate_sbe(const Expression& e) {
  std::vector<Condition> conditions;
  detail::collect_conditions(e, 0, conditions);
  std::set<std::string, std::less<>> seen;
  for (const auto& c : conditions) {
    if (!seen.insert(c.variable).second) throw SbeViolation(c.variable);
  }
  return ConditionTable(std::move(conditions));
}

/// Throws DomainError unless the keys of `v` are exactly the variables of `e`.
inline void check_domain(const Expression& e, const Assignment& v) {
  const auto vars = variable_set(e);
  for (const auto& name : vars) {
    if (!v.contains(name)) throw DomainError("assignment is missing variable '" + name + "'");
  }
  for (const auto& [name, value] : v) {
    if (!vars.contains(name)) throw DomainError("assignment binds unknown variable '" + name + "'");
  }
}

inline bool evaluate(const Expression& e, const Assignment& v) {
  check_domain(e, v);
  return detail::evaluate_unchecked(e, v);
}

inline bool evaluate(const Expression& e, const TestVector& v) { return evaluate(e, v.inputs); }

/// Largest variable count accepted by exhaustive equivalence checking.
inline constexpr std::size_t kExhaustiveLimit = 20;

struct Exhaustive {};
struct Sampled {
  std::size_t count = 1000;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<std::string> shared_order(const Expression& a, const Expression& b) {
  auto va = variable_set(a);
  auto vb = variable_set(b);
  if (va != vb) throw DomainError("expressions have different variable sets");
  if (va.size() > 64) throw InvalidArgument("more than 64 variables");
  return {va.begin(), va.end()};
}

}  // namespace detail

/// Compares every one of the 2^N assignments. Rejects N > kExhaustiveLimit.
inline bool equivalent(const Expression& a, const Expression& b, Exhaustive = {}) {
  const auto order = detail::shared_order(a, b);
  if (order.size() > kExhaustiveLimit) {
    throw InvalidArgument("exhaustive equivalence needs N <= " + std::to_string(kExhaustiveLimit) +
                          ", got " + std::to_string(order.size()) + "; use sampled mode");
  }
  const detail::CompiledExpression fa(a, order);
  const detail::CompiledExpression fb(b, order);
  const std::uint64_t rows = std::uint64_t{1} << order.size();
  for (std::uint64_t bits = 0; bits < rows; ++bits) {
    if (fa(bits) != fb(bits)) return false;
  }
  return true;
}

/// Compares `mode.count` assignments drawn from a generator seeded with `mode.seed`.
inline bool equivalent(const Expression& a, const Expression& b, Sampled mode) {
  const auto order = detail::shared_order(a, b);
  const detail::CompiledExpression fa(a, order);
  const detail::CompiledExpression fb(b, order);
  std::mt19937_64 rng(mode.seed);
  const std::uint64_t mask = order.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order.size()) - 1;
  for (std::size_t i = 0; i < mode.count; ++i) {
    const std::uint64_t bits = rng() & mask;
    if (fa(bits) != fb(bits)) return false;
  }
  return true;
}

}  // namespace eqrobin
