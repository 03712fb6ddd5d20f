#pragma once

// Constraint filtering and cost ranking over a suite family.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqrobin/error.hpp"
#include "eqrobin/sbe.hpp"
#include "eqrobin/suite.hpp"

namespace eqrobin {

/// Forbidden input patterns. Each pattern is a partial assignment; a vector is
/// illegal iff it agrees with every binding of at least one pattern.
struct ConstraintSet {
  std::vector<Assignment> forbidden;
};

/// Linear cost: every vector costs the sum of its per-binding weights plus the
/// weight of checking its outcome. Binding keys are "name=true" / "name=false".
struct CostModel {
  std::map<std::string, double, std::less<>> assignment_costs;
  double default_assignment_cost = 1.0;
  double outcome_true_cost = 0.0;
  double outcome_false_cost = 0.0;

  void validate() const {
    const auto check = [](double w, const std::string& what) {
      if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("cost weight for " + what + " must be finite and >= 0");
    };
    for (const auto& [key, w] : assignment_costs) check(w, "'" + key + "'");
    check(default_assignment_cost, "default assignment");
    check(outcome_true_cost, "outcome true");
    check(outcome_false_cost, "outcome false");
  }

  double binding_cost(const std::string& variable, bool value) const {
    const auto it = assignment_costs.find(variable + (value ? "=true" : "=false"));
    return it == assignment_costs.end() ? default_assignment_cost : it->second;
  }
};

/// Throws DomainError if a pattern names a variable `v` does not assign.
inline bool is_illegal(const TestVector& v, const ConstraintSet& cs) {
  bool illegal = false;
  for (const auto& pattern : cs.forbidden) {
    bool matches = true;
    for (const auto& [name, value] : pattern) {
      const auto it = v.inputs.find(name);
      if (it == v.inputs.end()) throw DomainError("constraint names unknown variable '" + name + "'");
      matches = matches && it->second == value;
    }
    illegal = illegal || matches;
  }
  return illegal;
}

struct OffendingVector {
  std::size_t test_index = 0;
  Assignment inputs;
};

struct DiscardedSuite {
  std::size_t member_index = 0;
  std::vector<OffendingVector> offending;
};

struct FilterResult {
  std::vector<std::size_t> valid;  // indices into SuiteFamily::members
  std::vector<DiscardedSuite> discarded;
};

/// Partitions the family, keeping family order inside each partition.
inline FilterResult filter_family(const SuiteFamily& f, const ConstraintSet& cs) {
  FilterResult out;
  for (std::size_t m = 0; m < f.members.size(); ++m) {
    const auto& tests = f.members[m].suite.tests;
    DiscardedSuite bad{m, {}};
    for (std::size_t t = 0; t < tests.size(); ++t) {
      if (is_illegal(tests[t], cs)) bad.offending.push_back({t, tests[t].inputs});
    }
    if (bad.offending.empty()) {
      out.valid.push_back(m);
    } else {
      out.discarded.push_back(std::move(bad));
    }
  }
  return out;
}

inline double cost_of(const TestSuite& s, const CostModel& cm) {
  cm.validate();
  double total = 0.0;
  for (const auto& t : s.tests) {
    for (const auto& [name, value] : t.inputs) total += cm.binding_cost(name, value);
    const bool outcome = t.outcome ? *t.outcome : evaluate(s.expression, t.inputs);
    total += outcome ? cm.outcome_true_cost : cm.outcome_false_cost;
  }
  return total;
}

enum class SelectionStatus { SoleSurvivor, CostRanked, NoneValid };

inline const char* to_string(SelectionStatus s) {
  switch (s) {
    case SelectionStatus::SoleSurvivor:
      return "sole-survivor";
    case SelectionStatus::CostRanked:
      return "cost-ranked";
    case SelectionStatus::NoneValid:
      return "none-valid";
  }
  return "none-valid";
}

struct RankedSuite {
  std::size_t member_index = 0;
  double cost = 0.0;
};

struct SelectionReport {
  FilterResult partition;
  std::vector<RankedSuite> ranking;  // ascending cost, ties in family order
  std::optional<std::size_t> selected;
  SelectionStatus status = SelectionStatus::NoneValid;
};

/// Filter, then rank the survivors by cost. Without a cost model every binding
/// weighs 1 and outcomes are free, which makes all N+1 suites tie.
inline SelectionReport select(const SuiteFamily& f, const ConstraintSet& cs,
                              const std::optional<CostModel>& cm = std::nullopt) {
  const CostModel model = cm.value_or(CostModel{});
  model.validate();
  SelectionReport report;
  report.partition = filter_family(f, cs);
  for (const std::size_t m : report.partition.valid) report.ranking.push_back({m, cost_of(f.members[m].suite, model)});
  std::stable_sort(report.ranking.begin(), report.ranking.end(),
                   [](const RankedSuite& a, const RankedSuite& b) { return a.cost < b.cost; });
  if (report.ranking.empty()) {
    report.status = SelectionStatus::NoneValid;
  } else {
    report.selected = report.ranking.front().member_index;
    report.status = report.ranking.size() == 1 ? SelectionStatus::SoleSurvivor : SelectionStatus::CostRanked;
  }
  return report;
}

}  // namespace eqrobin
