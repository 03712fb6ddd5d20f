#pragma once

// Enumeration of structurally distinct, semantically equivalent rearrangements
// of an SBE.
//
// Default mode applies commutative swaps at every And/Or node: for each pair of
// child variants (l, r) the node yields op(l, r) followed by op(r, l), left
// variants in the outer loop. Negation maps over its operand's variants.
//
// Associative mode flattens every maximal same-operator chain into its operands
// and yields every operand ordering combined with every binary bracketing.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "eqrobin/detail/random.hpp"
#include "eqrobin/error.hpp"
#include "eqrobin/expression.hpp"
#include "eqrobin/sbe.hpp"

namespace eqrobin {

struct VariantOptions {
  bool include_associativity = false;
  /// Hard cap on the family size; must be at least 1.
  std::size_t max_variants = 10000;
  /// When the cap is hit: absent means keep the depth-first prefix, present
  /// means draw a uniform sample with this seed.
  std::optional<std::uint64_t> sample_seed;
};

struct VariantFamily {
  Expression source;
  /// members[0] is always the source structure.
  std::vector<Expression> members;
  /// Size of the full rearrangement space, saturating at UINT64_MAX.
  std::uint64_t total_variants = 0;
  bool truncated = false;
  VariantOptions options;
};

namespace detail {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

/// Operands of the maximal chain of `kind` rooted at `e`, left to right.
inline void flatten_chain(const Expression& e, NodeKind kind, std::vector<Expression>& out) {
  if (e.kind() == kind) {
    flatten_chain(e.left(), kind, out);
    flatten_chain(e.right(), kind, out);
  } else {
    out.push_back(e);
  }
}

inline std::vector<Expression> chain_operands(const Expression& e) {
  std::vector<Expression> out;
  flatten_chain(e, e.kind(), out);
  return out;
}

inline std::uint64_t catalan(std::uint64_t n) {
  // C(n) = C(n-1) * 2(2n-1) / (n+1), saturating.
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const std::uint64_t num = 2 * (2 * i - 1);
    if (c > kSaturated / num) return kSaturated;
    c = c * num / (i + 1);
  }
  return c;
}

inline std::uint64_t space_size(const Expression& e, bool assoc) {
  switch (e.kind()) {
    case NodeKind::Variable:
      return 1;
    case NodeKind::Not:
      return space_size(e.operand(), assoc);
    default:
      break;
  }
  if (!assoc) return sat_mul(2, sat_mul(space_size(e.left(), false), space_size(e.right(), false)));
  const auto operands = chain_operands(e);
  const std::uint64_t k = operands.size();
  std::uint64_t n = catalan(k - 1);
  for (std::uint64_t i = 2; i <= k; ++i) n = sat_mul(n, i);
  for (const auto& op : operands) n = sat_mul(n, space_size(op, true));
  return n;
}

// Sink returns false to stop the enumeration; every enumerate_* returns false
// once stopped.
using Sink = std::function<bool(const Expression&)>;

inline bool enumerate(const Expression& e, bool assoc, const Sink& sink);

inline bool enumerate_commutative(const Expression& e, const Sink& sink) {
  const NodeKind kind = e.kind();
  return enumerate(e.left(), false, [&](const Expression& l) {
    return enumerate(e.right(), false, [&](const Expression& r) {
      return sink(Expression::binary(kind, l, r)) && sink(Expression::binary(kind, r, l));
    });
  });
}

// All bracketings of slots [lo, hi) of `order`, splitting at ascending points.
inline bool enumerate_bracketings(NodeKind kind, const std::vector<Expression>& operands,
                                  const std::vector<std::size_t>& order, std::size_t lo, std::size_t hi,
                                  const Sink& sink) {
  if (hi - lo == 1) return enumerate(operands[order[lo]], true, sink);
  for (std::size_t split = lo + 1; split < hi; ++split) {
    const bool more = enumerate_bracketings(kind, operands, order, lo, split, [&](const Expression& l) {
      return enumerate_bracketings(kind, operands, order, split, hi, [&](const Expression& r) {
        return sink(Expression::binary(kind, l, r));
      });
    });
    if (!more) return false;
  }
  return true;
}

inline bool enumerate_associative(const Expression& e, const Sink& sink) {
  const auto operands = chain_operands(e);
  std::vector<std::size_t> order(operands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    if (!enumerate_bracketings(e.kind(), operands, order, 0, order.size(), sink)) return false;
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

inline bool enumerate(const Expression& e, bool assoc, const Sink& sink) {
  switch (e.kind()) {
    case NodeKind::Variable:
      return sink(e);
    case NodeKind::Not:
      return enumerate(e.operand(), assoc, [&](const Expression& v) { return sink(Expression::negation(v)); });
    default:
      return assoc ? enumerate_associative(e, sink) : enumerate_commutative(e, sink);
  }
}

inline Expression draw(const Expression& e, bool assoc, std::mt19937_64& rng);

// Uniform random binary tree over `leaves` (in order), grown by Remy's
// insertion procedure: each step picks one of the 2i-1 existing nodes uniformly
// and splices a new internal node above it with a fresh leaf on a random side.
inline Expression draw_bracketing(NodeKind kind, std::vector<Expression> leaves, std::mt19937_64& rng) {
  struct Slot {
    int left = -1;
    int right = -1;
    int parent = -1;
  };
  const std::size_t n = leaves.size();
  std::vector<Slot> nodes(1);
  int root = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const int target = static_cast<int>(bounded(rng, nodes.size()));
    const int leaf = static_cast<int>(nodes.size());
    nodes.push_back({});
    const int inner = static_cast<int>(nodes.size());
    nodes.push_back({});
    const bool leaf_on_left = bounded(rng, 2) == 0;
    const int parent = nodes[target].parent;
    nodes[inner].parent = parent;
    if (parent < 0) {
      root = inner;
    } else if (nodes[parent].left == target) {
      nodes[parent].left = inner;
    } else {
      nodes[parent].right = inner;
    }
    nodes[inner].left = leaf_on_left ? leaf : target;
    nodes[inner].right = leaf_on_left ? target : leaf;
    nodes[target].parent = inner;
    nodes[leaf].parent = inner;
  }
  std::size_t next_leaf = 0;
  std::function<Expression(int)> build = [&](int id) -> Expression {
    if (nodes[id].left < 0) return leaves[next_leaf++];
    Expression l = build(nodes[id].left);
    Expression r = build(nodes[id].right);
    return Expression::binary(kind, std::move(l), std::move(r));
  };
  return build(root);
}

inline Expression draw(const Expression& e, bool assoc, std::mt19937_64& rng) {
  switch (e.kind()) {
    case NodeKind::Variable:
      return e;
    case NodeKind::Not:
      return Expression::negation(draw(e.operand(), assoc, rng));
    default:
      break;
  }
  if (!assoc) {
    const bool swap = bounded(rng, 2) == 1;
    Expression l = draw(e.left(), false, rng);
    Expression r = draw(e.right(), false, rng);
    return swap ? Expression::binary(e.kind(), r, l) : Expression::binary(e.kind(), l, r);
  }
  auto operands = chain_operands(e);
  for (std::size_t i = operands.size(); i > 1; --i) {
    std::swap(operands[i - 1], operands[bounded(rng, i)]);
  }
  for (auto& op : operands) op = draw(op, true, rng);
  return draw_bracketing(e.kind(), std::move(operands), rng);
}

}  // namespace detail

/// Number of rearrangements the generator would produce without a cap.
inline std::uint64_t variant_space_size(const Expression& e, bool include_associativity = false) {
  validate_sbe(e);
  return detail::space_size(e, include_associativity);
}

/// 2^k for k And/Or nodes (saturating). With distinct leaves every swap
/// pattern is a distinct tree, so this is the uncapped commutative family size.
inline std::uint64_t predicted_variant_count(const Expression& e) {
  validate_sbe(e);
  const std::size_t k = e.binary_count();
  return k >= 64 ? detail::kSaturated : std::uint64_t{1} << k;
}

/// Throws SbeViolation for non-singular input. Hitting the cap is reported
/// through `truncated`, never as an error.
inline VariantFamily generate_variants(const Expression& e, const VariantOptions& opts = {}) {
  validate_sbe(e);
  if (opts.max_variants < 1) throw InvalidArgument("max_variants must be at least 1");

  VariantFamily family{e, {}, detail::space_size(e, opts.include_associativity), false, opts};
  family.truncated = family.total_variants > opts.max_variants;

  std::unordered_set<std::string> keys;
  const auto add = [&](const Expression& v) {
    if (keys.insert(structural_key(v)).second) family.members.push_back(v);
    return family.members.size() < opts.max_variants;
  };
  add(e);

  if (family.truncated && opts.sample_seed) {
    std::mt19937_64 rng(*opts.sample_seed);
    // Rejection of repeats; the budget only matters when the space is barely
    // larger than the cap.
    const std::size_t budget = 64 * opts.max_variants + 1024;
    for (std::size_t i = 0; i < budget && family.members.size() < opts.max_variants; ++i) {
      add(detail::draw(e, opts.include_associativity, rng));
    }
  } else if (family.members.size() < opts.max_variants) {
    detail::enumerate(e, opts.include_associativity, add);
  }
  return family;
}

}  // namespace eqrobin
