#include <gtest/gtest.h>

#include <random>

#include "eqrobin/coverage.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace eqrobin {
namespace {

using testing::table1;
using testing::table2;

TEST(Fixtures, FixtureOutcomesMatchEvaluation) {
  const Expression baseline = parse(testing::kExprBaseline);
  const auto t1 = table1();
  for (std::size_t i = 0; i < t1.size(); ++i) EXPECT_EQ(evaluate(baseline, t1[i]), testing::kTable1[i].back()) << i;
  const Expression rearranged = parse(testing::kExprRearranged);
  const auto t2 = table2();
  for (std::size_t i = 0; i < t2.size(); ++i) EXPECT_EQ(evaluate(rearranged, t2[i]), testing::kTable2[i].back()) << i;
}

TEST(FindPair, TableOneConditionA) {
  const auto pair = find_pair(parse(testing::kExprBaseline), table1(), "a");
  ASSERT_TRUE(pair);
  EXPECT_EQ(pair->first, 1U);  // TC2
  EXPECT_EQ(pair->second, 3U);  // TC4
  EXPECT_TRUE(pair->first_outcome);
  EXPECT_FALSE(pair->second_outcome);
}

TEST(FindPair, TableTwoConditionA) {
  const auto pair = find_pair(parse(testing::kExprRearranged), table2(), "a");
  ASSERT_TRUE(pair);
  EXPECT_EQ(pair->first, 0U);  // TC1
  EXPECT_EQ(pair->second, 2U);  // TC3
}

TEST(FindPair, SingleLeaf) {
  const std::vector<TestVector> s = {{{{"a", true}}, {}}, {{{"a", false}}, {}}};
  const auto pair = find_pair(parse("a"), s, "a");
  ASSERT_TRUE(pair);
  EXPECT_EQ(pair->first, 0U);
  EXPECT_EQ(pair->second, 1U);
}

TEST(FindPair, ConditionByLabelAndErrors) {
  const auto by_label = find_pair(parse(testing::kExprBaseline), table1(), "!b");
  const auto by_name = find_pair(parse(testing::kExprBaseline), table1(), "b");
  ASSERT_TRUE(by_label && by_name);
  EXPECT_EQ(by_label->first, by_name->first);
  EXPECT_EQ(by_label->condition.label(), "!b");
  EXPECT_THROW(find_pair(parse(testing::kExprBaseline), table1(), "z"), UnknownCondition);
  const std::vector<TestVector> partial = {{{{"a", true}}, {}}};
  EXPECT_THROW(find_pair(parse("a && b"), partial, "a"), DomainError);
}

TEST(CheckUniqueCause, TableOnePasses) {
  const auto report = check_unique_cause(parse(testing::kExprBaseline), table1());
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.covered, 5U);
  EXPECT_DOUBLE_EQ(report.percent(), 100.0);
  std::vector<std::string> labels;
  for (const auto& c : report.conditions) labels.push_back(c.condition.label());
  EXPECT_EQ(labels, testing::kTable1Columns);
}

TEST(CheckUniqueCause, TableTwoPasses) {
  const auto report = check_unique_cause(parse(testing::kExprRearranged), table2());
  EXPECT_TRUE(report.pass);
  EXPECT_TRUE(verify_minimal(parse(testing::kExprRearranged), table2()));
}

TEST(CheckUniqueCause, DroppingTestCaseFourLosesConditionA) {
  auto s = table1();
  s.erase(s.begin() + 3);
  const Expression e = parse(testing::kExprBaseline);
  const auto report = check_unique_cause(e, s);
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(report.covered, 4U);
  EXPECT_DOUBLE_EQ(report.percent(), 80.0);
  ASSERT_EQ(report.uncovered().size(), 1U);
  EXPECT_EQ(report.uncovered().front().variable, "a");
  EXPECT_FALSE(verify_minimal(e, s));
}

TEST(CheckUniqueCause, OneVectorIsNotEnough) {
  const std::vector<TestVector> s = {{{{"a", true}}, {}}};
  const auto report = check_unique_cause(parse("a"), s);
  EXPECT_FALSE(report.pass);
  EXPECT_DOUBLE_EQ(report.percent(), 0.0);
  EXPECT_TRUE(verify_minimal(parse("a"), std::vector<TestVector>{{{{"a", true}}, {}}, {{{"a", false}}, {}}}));
}

TEST(CheckUniqueCause, EmptySuite) {
  const auto report = check_unique_cause(parse(testing::kExprD), std::vector<TestVector>{});
  EXPECT_EQ(report.covered, 0U);
  EXPECT_EQ(report.total, 5U);
  EXPECT_FALSE(report.pass);
}

TEST(CheckUniqueCause, IgnoresCachedOutcomes) {
  auto s = table1();
  for (auto& t : s) t.outcome = false;
  EXPECT_TRUE(check_unique_cause(parse(testing::kExprBaseline), s).pass);
}

TEST(VerifyMinimal, RejectsOversizedSuites) {
  auto s = table1();
  s.push_back(table2()[5]);
  const Expression e = parse(testing::kExprBaseline);
  EXPECT_TRUE(check_unique_cause(e, s).pass);
  EXPECT_FALSE(verify_minimal(e, s));
}

std::vector<TestVector> random_vectors(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t count) {
  std::vector<TestVector> out;
  for (std::size_t i = 0; i < count; ++i) {
    TestVector v;
    for (const auto& name : vars) v.inputs[name] = rng() % 2 == 0;
    out.push_back(std::move(v));
  }
  return out;
}

TEST(Properties, AgreesWithNaiveCheckerAndIsMonotone) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const Expression e = testing::random_sbe(rng, 1 + rng() % 5);
    const auto vars = validate_sbe(e).variables();
    auto s = random_vectors(rng, vars, 1 + rng() % 8);
    std::vector<std::map<std::string, bool>> rows;
    for (const auto& t : s) rows.emplace_back(t.inputs.begin(), t.inputs.end());
    const auto before = check_unique_cause(e, s);
    ASSERT_EQ(before.covered, testing::naive_covered(e, rows));

    s.push_back(random_vectors(rng, vars, 1).front());
    ASSERT_GE(check_unique_cause(e, s).covered, before.covered);
  }
}

TEST(Properties, PairIsOrderInsensitive) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    const Expression e = testing::random_sbe(rng, 2 + rng() % 4);
    const auto vars = validate_sbe(e).variables();
    const auto s = random_vectors(rng, vars, 6);
    auto reversed = s;
    std::reverse(reversed.begin(), reversed.end());
    for (const auto& v : vars) {
      const auto a = find_pair(e, s, v);
      const auto b = find_pair(e, reversed, v);
      ASSERT_EQ(a.has_value(), b.has_value());
    }
  }
}

}  // namespace
}  // namespace eqrobin
