#pragma once

// JSON, CSV and plain-table renderings of suites, reports and config files.
// Output key order is fixed (ordered_json) so machine formats are byte-stable.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqrobin/coverage.hpp"
#include "eqrobin/error.hpp"
#include "eqrobin/experiment.hpp"
#include "eqrobin/selection.hpp"
#include "eqrobin/suite.hpp"
#include "eqrobin/variants.hpp"

namespace eqrobin::io {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& err) {
    throw IoError("'" + path + "' is not valid JSON: " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

inline bool literal_value(const Condition& c, const Assignment& inputs) {
  const bool v = inputs.at(c.variable);
  return c.negated ? !v : v;
}

inline ojson to_json(const TestSuite& s) {
  ojson tests = ojson::array();
  for (const auto& t : s.tests) {
    ojson assignment = ojson::object();
    ojson literals = ojson::object();
    for (const auto& c : s.conditions) {
      assignment[c.variable] = t.inputs.at(c.variable);
      literals[c.label()] = literal_value(c, t.inputs);
    }
    const bool outcome = t.outcome ? *t.outcome : evaluate(s.expression, t.inputs);
    tests.push_back(ojson{{"assignment", assignment}, {"literals", literals}, {"outcome", outcome}});
  }
  return ojson{{"expression", serialize(s.expression)}, {"columns", s.conditions.labels()}, {"tests", tests}};
}

/// Reads the vectors of a suite document for expression `e`. Each test gives
/// either "assignment" (variable -> bool) or "literals" (label -> bool, where
/// "!x" holds the negation of x). Any "outcome" is kept as the cached outcome.
inline TestSuite suite_from_json(const json& doc, const Expression& e) {
  if (!doc.is_object() || !doc.contains("tests") || !doc["tests"].is_array()) {
    throw IoError("suite document needs a \"tests\" array");
  }
  TestSuite suite{e, validate_sbe(e), {}};
  for (const auto& item : doc["tests"]) {
    TestVector v;
    if (item.contains("assignment")) {
      for (const auto& [name, value] : item["assignment"].items()) {
        if (!value.is_boolean()) throw IoError("assignment of '" + name + "' is not a boolean");
        v.inputs[name] = value.get<bool>();
      }
    } else if (item.contains("literals")) {
      for (const auto& [label, value] : item["literals"].items()) {
        if (!value.is_boolean()) throw IoError("literal '" + label + "' is not a boolean");
        const bool negated = !label.empty() && label.front() == '!';
        v.inputs[negated ? label.substr(1) : label] = negated ? !value.get<bool>() : value.get<bool>();
      }
    } else {
      throw IoError("test entry needs \"assignment\" or \"literals\"");
    }
    if (item.contains("outcome") && item["outcome"].is_boolean()) v.outcome = item["outcome"].get<bool>();
    suite.tests.push_back(std::move(v));
  }
  return suite;
}

inline std::string to_table(const TestSuite& s) {
  const auto labels = s.conditions.labels();
  std::vector<std::size_t> widths;
  std::ostringstream out;
  out << "Test Case";
  for (const auto& l : labels) {
    widths.push_back(std::max<std::size_t>(l.size(), 1));
    out << "  " << l;
  }
  out << "  Result\n";
  for (std::size_t i = 0; i < s.tests.size(); ++i) {
    const auto& t = s.tests[i];
    std::string num = std::to_string(i + 1);
    out << num << std::string(9 - std::min<std::size_t>(9, num.size()), ' ');
    for (std::size_t c = 0; c < labels.size(); ++c) {
      out << "  " << (literal_value(s.conditions[c], t.inputs) ? 'T' : 'F') << std::string(widths[c] - 1, ' ');
    }
    const bool outcome = t.outcome ? *t.outcome : evaluate(s.expression, t.inputs);
    out << "  " << (outcome ? 'T' : 'F') << '\n';
  }
  return out.str();
}

inline std::string csv_quote(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Header "test_case,<labels...>,result" then T/F rows. With `prefix`, each
/// row starts with that column value (used for family listings).
inline std::string to_csv_rows(const TestSuite& s, const std::string& prefix = {}) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.tests.size(); ++i) {
    const auto& t = s.tests[i];
    if (!prefix.empty()) out << prefix << ',';
    out << (i + 1);
    for (const auto& c : s.conditions) out << ',' << (literal_value(c, t.inputs) ? 'T' : 'F');
    const bool outcome = t.outcome ? *t.outcome : evaluate(s.expression, t.inputs);
    out << ',' << (outcome ? 'T' : 'F') << '\n';
  }
  return out.str();
}

inline std::string to_csv(const TestSuite& s) {
  std::string header = "test_case";
  for (const auto& l : s.conditions.labels()) header += "," + csv_quote(l);
  return header + ",result\n" + to_csv_rows(s);
}

// ---------------------------------------------------------------------------
// Variant and suite families
// ---------------------------------------------------------------------------

inline ojson to_json(const VariantOptions& o) {
  return ojson{{"include_associativity", o.include_associativity},
               {"max_variants", o.max_variants},
               {"sample_seed", o.sample_seed ? ojson(*o.sample_seed) : ojson(nullptr)}};
}

inline ojson to_json(const VariantFamily& f) {
  ojson members = ojson::array();
  for (const auto& m : f.members) members.push_back(serialize(m));
  return ojson{{"source", serialize(f.source)},
               {"count", f.members.size()},
               {"total_variants", f.total_variants},
               {"truncated", f.truncated},
               {"options", to_json(f.options)},
               {"variants", members}};
}

inline ojson to_json(const SuiteFamily& f) {
  ojson suites = ojson::array();
  for (std::size_t m = 0; m < f.members.size(); ++m) {
    suites.push_back(ojson{{"member_index", m},
                           {"variant_index", f.members[m].variant_index},
                           {"suite", to_json(f.members[m].suite)}});
  }
  return ojson{{"source", serialize(f.source)},
               {"variant_count", f.variant_count},
               {"total_variants", f.total_variants},
               {"truncated", f.truncated},
               {"distinct_suites", f.distinct_count()},
               {"options", to_json(f.options)},
               {"suites", suites}};
}

// ---------------------------------------------------------------------------
// Coverage
// ---------------------------------------------------------------------------

/// Pairs are reported as 1-based test case numbers.
inline ojson to_json(const CoverageReport& r) {
  ojson conditions = ojson::array();
  for (const auto& c : r.conditions) {
    ojson pair = c.pair ? ojson::array({c.pair->first + 1, c.pair->second + 1}) : ojson(nullptr);
    conditions.push_back(ojson{{"label", c.condition.label()}, {"pair", pair}});
  }
  return ojson{{"pass", r.pass}, {"coverage_percent", r.percent()}, {"conditions", conditions}};
}

inline std::string to_table(const CoverageReport& r) {
  std::ostringstream out;
  for (const auto& c : r.conditions) {
    out << c.condition.label() << ": ";
    if (c.pair) {
      out << "TC" << c.pair->first + 1 << " / TC" << c.pair->second + 1 << '\n';
    } else {
      out << "uncovered\n";
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", r.percent());
  out << "coverage " << r.covered << '/' << r.total << " (" << buf << "%) " << (r.pass ? "PASS" : "FAIL") << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Constraints, costs, selection
// ---------------------------------------------------------------------------

/// `{ "forbidden": [ { var: bool, ... }, ... ] }`
inline ConstraintSet constraints_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("forbidden") || !doc["forbidden"].is_array()) {
    throw IoError("constraints document needs a \"forbidden\" array");
  }
  ConstraintSet cs;
  for (const auto& pattern : doc["forbidden"]) {
    if (!pattern.is_object()) throw IoError("forbidden pattern must be an object");
    Assignment a;
    for (const auto& [name, value] : pattern.items()) {
      if (!value.is_boolean()) throw IoError("forbidden binding for '" + name + "' is not a boolean");
      a[name] = value.get<bool>();
    }
    cs.forbidden.push_back(std::move(a));
  }
  return cs;
}

/// `{ "assignment_costs": {"e=true": 10.0}, "default_assignment_cost": 1.0,
///    "outcome_costs": {"true": 0.0, "false": 0.0} }`, all keys optional.
inline CostModel cost_model_from_json(const json& doc) {
  if (!doc.is_object()) throw IoError("cost document must be an object");
  CostModel cm;
  const auto number = [](const json& v, const std::string& what) {
    if (!v.is_number()) throw IoError(what + " is not a number");
    return v.get<double>();
  };
  if (doc.contains("assignment_costs")) {
    for (const auto& [key, value] : doc["assignment_costs"].items()) {
      cm.assignment_costs[key] = number(value, "cost of '" + key + "'");
    }
  }
  if (doc.contains("default_assignment_cost")) {
    cm.default_assignment_cost = number(doc["default_assignment_cost"], "default_assignment_cost");
  }
  if (doc.contains("outcome_costs")) {
    const auto& oc = doc["outcome_costs"];
    if (oc.contains("true")) cm.outcome_true_cost = number(oc["true"], "outcome cost 'true'");
    if (oc.contains("false")) cm.outcome_false_cost = number(oc["false"], "outcome cost 'false'");
  }
  try {
    cm.validate();
  } catch (const InvalidArgument& err) {
    throw IoError(err.what());
  }
  return cm;
}

inline ojson assignment_json(const Assignment& a) {
  ojson out = ojson::object();
  for (const auto& [name, value] : a) out[name] = value;
  return out;
}

inline ojson to_json(const SelectionReport& r, const SuiteFamily& f) {
  ojson selected = nullptr;
  if (r.selected) {
    const auto& member = f.members[*r.selected];
    double cost = 0.0;
    for (const auto& rank : r.ranking) {
      if (rank.member_index == *r.selected) cost = rank.cost;
    }
    selected = ojson{{"member_index", *r.selected},
                     {"variant_index", member.variant_index},
                     {"variant", serialize(member.variant())},
                     {"cost", cost},
                     {"coverage", to_json(check_unique_cause(member.variant(), member.suite))},
                     {"suite", to_json(member.suite)}};
  }
  ojson discarded = ojson::array();
  for (const auto& d : r.partition.discarded) {
    ojson offending = ojson::array();
    for (const auto& o : d.offending) {
      offending.push_back(ojson{{"test_case", o.test_index + 1}, {"assignment", assignment_json(o.inputs)}});
    }
    discarded.push_back(ojson{{"member_index", d.member_index},
                              {"variant", serialize(f.members[d.member_index].variant())},
                              {"offending", offending}});
  }
  ojson ranking = ojson::array();
  for (const auto& rank : r.ranking) ranking.push_back(ojson{{"member_index", rank.member_index}, {"cost", rank.cost}});
  return ojson{{"status", to_string(r.status)},
               {"source", serialize(f.source)},
               {"variant_count", f.variant_count},
               {"distinct_suites", f.distinct_count()},
               {"truncated", f.truncated},
               {"valid", r.partition.valid},
               {"discarded", discarded},
               {"ranking", ranking},
               {"selected", selected}};
}

// ---------------------------------------------------------------------------
// Experiment reports
// ---------------------------------------------------------------------------

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline ojson rejected_json(const std::vector<RejectedEntry>& rejected) {
  ojson out = ojson::array();
  for (const auto& r : rejected) out.push_back(ojson{{"index", r.index}, {"name", r.name}, {"error", r.error}});
  return out;
}

inline ojson to_json(const DiversityReport& r, const std::vector<RejectedEntry>& rejected = {}) {
  ojson entries = ojson::array();
  for (const auto& row : r.rows) {
    entries.push_back(ojson{{"name", row.name},
                            {"expr", row.text},
                            {"n", row.conditions},
                            {"variant_count", row.variant_count},
                            {"total_variants", row.total_variants},
                            {"truncated", row.truncated},
                            {"distinct_suites", row.distinct_suites}});
  }
  return ojson{{"experiment", "rq1"}, {"options", to_json(r.options)}, {"entries", entries},
               {"rejected", rejected_json(rejected)}};
}

inline std::string to_csv(const DiversityReport& r) {
  std::string out = "name,expr,n,variant_count,total_variants,truncated,distinct_suites\n";
  for (const auto& row : r.rows) {
    out += csv_quote(row.name) + ',' + csv_quote(row.text) + ',' + std::to_string(row.conditions) + ',' +
           std::to_string(row.variant_count) + ',' + std::to_string(row.total_variants) + ',' +
           (row.truncated ? "true" : "false") + ',' + std::to_string(row.distinct_suites) + '\n';
  }
  return out;
}

inline ojson to_json(const ResilienceReport& r, const std::vector<RejectedEntry>& rejected = {}) {
  ojson entries = ojson::array();
  for (const auto& row : r.rows) {
    ojson records = ojson::array();
    for (const auto& rec : row.records) {
      records.push_back(ojson{{"trial", rec.trial},
                              {"illegal_test_case", rec.illegal_index + 1},
                              {"illegal", assignment_json(rec.illegal)},
                              {"success", rec.success},
                              {"witness_member", rec.witness ? ojson(*rec.witness) : ojson(nullptr)}});
    }
    entries.push_back(ojson{{"name", row.name},
                            {"n", row.conditions},
                            {"variant_count", row.variant_count},
                            {"distinct_suites", row.distinct_suites},
                            {"trials", row.trials},
                            {"successes", row.successes},
                            {"success_rate", row.success_rate()},
                            {"records", records}});
  }
  return ojson{{"experiment", "rq2"},   {"seed", r.seed},     {"trials", r.trials},
               {"options", to_json(r.options)}, {"entries", entries}, {"rejected", rejected_json(rejected)}};
}

/// One row per (entry, trial), with the entry totals repeated on every row.
inline std::string to_csv(const ResilienceReport& r) {
  std::string out = "name,n,trial,illegal_test_case,success,witness_member,successes,trials,success_rate\n";
  for (const auto& row : r.rows) {
    for (const auto& rec : row.records) {
      out += csv_quote(row.name) + ',' + std::to_string(row.conditions) + ',' + std::to_string(rec.trial) + ',' +
             std::to_string(rec.illegal_index + 1) + ',' + (rec.success ? "true" : "false") + ',' +
             (rec.witness ? std::to_string(*rec.witness) : std::string()) + ',' + std::to_string(row.successes) +
             ',' + std::to_string(row.trials) + ',' + fixed(row.success_rate()) + '\n';
    }
  }
  return out;
}

}  // namespace eqrobin::io
