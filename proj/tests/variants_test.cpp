#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <set>

#include "eqrobin/variants.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace eqrobin {
namespace {

std::vector<std::string> texts(const VariantFamily& f) {
  std::vector<std::string> out;
  for (const auto& m : f.members) out.push_back(serialize(m));
  return out;
}

TEST(GenerateVariants, SingleSwap) {
  const auto f = generate_variants(parse("a && b"));
  EXPECT_EQ(texts(f), (std::vector<std::string>{"(a && b)", "(b && a)"}));
  EXPECT_FALSE(f.truncated);
  EXPECT_EQ(f.total_variants, 2U);
}

TEST(GenerateVariants, HandTracedOrder) {
  // Outer loop over left variants, original order before swapped.
  const auto f = generate_variants(parse("(a && b) || c"));
  EXPECT_EQ(texts(f), (std::vector<std::string>{"((a && b) || c)", "(c || (a && b))", "((b && a) || c)",
                                                "(c || (b && a))"}));
}

TEST(GenerateVariants, NegationIsNotCommutative) {
  EXPECT_EQ(texts(generate_variants(parse("!a"))), (std::vector<std::string>{"(!a)"}));
  EXPECT_EQ(texts(generate_variants(parse("!(a || b)"))),
            (std::vector<std::string>{"(!(a || b))", "(!(b || a))"}));
}

TEST(GenerateVariants, WorkedExampleHasSixteenVariants) {
  const Expression d = parse(testing::kExprD);
  const auto f = generate_variants(d);
  EXPECT_EQ(f.members.size(), 16U);
  EXPECT_EQ(predicted_variant_count(d), 16U);
  const auto oracle = testing::all_swaps(d, 4);
  const auto got = texts(f);
  EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), oracle);
  // The rearranged form from the worked example is one of them.
  EXPECT_TRUE(oracle.contains(serialize(parse("((a && (!b || !c)) && d) || e"))));
  EXPECT_TRUE(oracle.contains(serialize(parse("(d && ((!b || !c) && a)) || e"))));
}

TEST(GenerateVariants, RejectsNonSbe) {
  EXPECT_THROW(generate_variants(parse("a && a")), SbeViolation);
  EXPECT_THROW(generate_variants(parse("a"), VariantOptions{false, 0, {}}), InvalidArgument);
}

TEST(PredictedVariantCount, PowersOfTwo) {
  EXPECT_EQ(predicted_variant_count(parse("a")), 1U);
  EXPECT_EQ(predicted_variant_count(parse("a && b")), 2U);
  EXPECT_EQ(predicted_variant_count(parse("a && b && c")), 4U);
  EXPECT_EQ(generate_variants(parse("a && b && c")).members.size(), 4U);
}

// Independent oracle: every swap mask over the pre-order numbered And/Or nodes.
TEST(GenerateVariants, MatchesSwapMaskEnumeration) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const Expression e = testing::random_sbe(rng, 1 + rng() % 8);
    const auto f = generate_variants(e);
    const auto got = texts(f);
    const std::set<std::string> unique(got.begin(), got.end());
    ASSERT_EQ(unique.size(), got.size()) << "duplicate member";
    ASSERT_EQ(unique, testing::all_swaps(e, e.binary_count())) << serialize(e);
    ASSERT_EQ(f.members.size(), std::size_t{1} << e.binary_count());
  }
}

TEST(GenerateVariants, FamilyInvariants) {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 60; ++i) {
    const Expression e = testing::random_sbe(rng, 1 + rng() % 9);
    const auto f = generate_variants(e);
    ASSERT_EQ(f.members.front(), e);
    const auto tt = testing::truth_table(e);
    auto vars = validate_sbe(e).variables();
    std::sort(vars.begin(), vars.end());
    for (const auto& m : f.members) {
      ASSERT_EQ(testing::truth_table(m), tt);
      ASSERT_TRUE(equivalent(m, e));
      auto mv = validate_sbe(m).variables();
      std::sort(mv.begin(), mv.end());
      ASSERT_EQ(mv, vars);
    }
    EXPECT_EQ(texts(generate_variants(e)), texts(f));
  }
}

TEST(Associativity, ChainCountsAreFactorialTimesCatalan) {
  const VariantOptions assoc{true, 100000, {}};
  // k! * Catalan(k-1): 2, 12, 120, 1680.
  const std::vector<std::pair<std::string, std::size_t>> cases = {
      {"a && b", 2}, {"a && b && c", 12}, {"a || b || c || d", 120}, {"a && b && c && d && e", 1680}};
  for (const auto& [text, expected] : cases) {
    const Expression e = parse(text);
    const auto f = generate_variants(e, assoc);
    EXPECT_EQ(f.members.size(), expected) << text;
    EXPECT_EQ(f.total_variants, expected) << text;
    const auto got = texts(f);
    EXPECT_EQ(std::set<std::string>(got.begin(), got.end()).size(), got.size());
    for (const auto& m : f.members) {
      EXPECT_TRUE(equivalent(m, e));
      EXPECT_EQ(m.kind(), e.kind());
    }
  }
}

TEST(Associativity, IncludesRegroupingsMissingFromCommutativeMode) {
  const Expression e = parse("a && b && c");
  const auto plain = texts(generate_variants(e));
  const auto full = texts(generate_variants(e, VariantOptions{true, 1000, {}}));
  const std::set<std::string> full_set(full.begin(), full.end());
  for (const auto& p : plain) EXPECT_TRUE(full_set.contains(p));
  const std::string regrouped = serialize(parse("a && (b && c)"));
  EXPECT_TRUE(full_set.contains(regrouped));
  EXPECT_EQ(std::count(plain.begin(), plain.end(), regrouped), 0);
  EXPECT_EQ(full.front(), serialize(e));
}

TEST(Associativity, NestedChainsMultiply) {
  // Or-chain of 3 operands (12 shapes) where one operand is a 2-chain (2) and
  // another is negated 2-chain (2): 12 * 2 * 2.
  const Expression e = parse("(a && b) || !(c && d) || x");
  const auto f = generate_variants(e, VariantOptions{true, 100000, {}});
  EXPECT_EQ(f.members.size(), 48U);
  EXPECT_EQ(f.members.front(), e);
  for (const auto& m : f.members) EXPECT_EQ(testing::truth_table(m), testing::truth_table(e));
}

TEST(Truncation, PrefixOfTheFullEnumeration) {
  const Expression d = parse(testing::kExprD);
  const auto full = texts(generate_variants(d));
  const auto capped = generate_variants(d, VariantOptions{false, 5, {}});
  EXPECT_TRUE(capped.truncated);
  EXPECT_EQ(capped.total_variants, 16U);
  EXPECT_EQ(texts(capped), std::vector<std::string>(full.begin(), full.begin() + 5));
  const auto exact = generate_variants(d, VariantOptions{false, 16, {}});
  EXPECT_FALSE(exact.truncated);
  EXPECT_EQ(exact.members.size(), 16U);
}

TEST(Truncation, CapOfOneKeepsSource) {
  const Expression d = parse(testing::kExprD);
  const auto f = generate_variants(d, VariantOptions{true, 1, {}});
  ASSERT_EQ(f.members.size(), 1U);
  EXPECT_EQ(f.members.front(), d);
}

TEST(Sampling, SeededUniqueAndEquivalent) {
  std::string text = "x0";
  for (int i = 1; i < 12; ++i) text += (i % 3 == 0 ? " || x" : " && x") + std::to_string(i);
  const Expression e = parse(text);
  const VariantOptions opts{false, 200, 99};
  const auto a = generate_variants(e, opts);
  const auto b = generate_variants(e, opts);
  EXPECT_TRUE(a.truncated);
  EXPECT_EQ(a.members.size(), 200U);
  EXPECT_EQ(texts(a), texts(b));
  EXPECT_EQ(a.members.front(), e);
  const auto got = texts(a);
  EXPECT_EQ(std::set<std::string>(got.begin(), got.end()).size(), got.size());
  for (const auto& m : a.members) EXPECT_TRUE(equivalent(m, e));
  const auto other = generate_variants(e, VariantOptions{false, 200, 100});
  EXPECT_NE(texts(other), got);
}

TEST(Sampling, AssociativeDrawsStayInsideTheSpace) {
  const Expression e = parse("a && b && c && d");
  const auto all = texts(generate_variants(e, VariantOptions{true, 1000, {}}));
  const std::set<std::string> space(all.begin(), all.end());
  const auto sampled = generate_variants(e, VariantOptions{true, 60, 7});
  EXPECT_EQ(sampled.members.size(), 60U);
  for (const auto& m : sampled.members) EXPECT_TRUE(space.contains(serialize(m)));
}

TEST(Sampling, ShapeDrawIsRoughlyUniform) {
  // 3 leaves, fixed order: 2 shapes. Draw many times via the sampler with a cap
  // equal to the space minus one and check both shapes and all orders appear.
  const Expression e = parse("a && b && c");
  std::map<std::string, int> hits;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const auto f = generate_variants(e, VariantOptions{true, 2, seed});
    hits[serialize(f.members[1])]++;
  }
  EXPECT_EQ(hits.size(), 11U);  // every variant except the source
  for (const auto& [text, n] : hits) EXPECT_GT(n, 10) << text;
}

TEST(ScaleGuard, TwentyThreeConditionChain) {
  std::string text = "c0";
  for (int i = 1; i < 23; ++i) text += " && c" + std::to_string(i);
  const Expression e = parse(text);
  const auto start = std::chrono::steady_clock::now();
  const auto f = generate_variants(e, VariantOptions{false, 10000, {}});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(f.truncated);
  EXPECT_EQ(f.members.size(), 10000U);
  EXPECT_EQ(f.total_variants, std::uint64_t{1} << 22);
  EXPECT_LT(seconds, 10.0);
  for (std::size_t i = 0; i < f.members.size(); i += 997) EXPECT_TRUE(equivalent(f.members[i], e, Sampled{1000, i}));
}

}  // namespace
}  // namespace eqrobin
