#pragma once

// Benchmark runs: suite diversity per expression (RQ1) and recovery from a
// randomly forbidden baseline vector (RQ2).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqrobin/coverage.hpp"
#include "eqrobin/detail/parallel.hpp"
#include "eqrobin/detail/random.hpp"
#include "eqrobin/error.hpp"
#include "eqrobin/expression.hpp"
#include "eqrobin/sbe.hpp"
#include "eqrobin/selection.hpp"
#include "eqrobin/suite.hpp"
#include "eqrobin/variants.hpp"

namespace eqrobin {

struct BenchmarkEntry {
  std::string name;
  std::string text;
  Expression expression;
  std::size_t conditions = 0;
};

struct RejectedEntry {
  std::size_t index = 0;  // position in the input list
  std::string name;
  std::string error;
};

struct Benchmark {
  std::vector<BenchmarkEntry> entries;
  std::vector<RejectedEntry> rejected;
};

/// Accepts `[ {"name": ..., "expr": ...}, ... ]`. A malformed entry is
/// rejected on its own; a document that is not a list throws IoError.
inline Benchmark parse_benchmark(const nlohmann::json& doc) {
  if (!doc.is_array()) throw IoError("benchmark must be a JSON array of {\"name\", \"expr\"} objects");
  Benchmark b;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    std::string name = "#" + std::to_string(i);
    try {
      if (!item.is_object()) throw IoError("entry is not an object");
      if (item.contains("name") && item["name"].is_string()) name = item["name"].get<std::string>();
      if (!item.contains("expr") || !item["expr"].is_string()) throw IoError("entry has no string \"expr\"");
      const auto text = item["expr"].get<std::string>();
      Expression e = parse(text);
      const std::size_t n = validate_sbe(e).size();
      b.entries.push_back({name, text, std::move(e), n});
    } catch (const Error& err) {
      b.rejected.push_back({i, name, err.what()});
    }
  }
  return b;
}

inline Benchmark load_benchmark(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open benchmark file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& err) {
    throw IoError("benchmark file '" + path + "' is not valid JSON: " + err.what());
  }
  return parse_benchmark(doc);
}

struct DiversityRow {
  std::string name;
  std::string text;
  std::size_t conditions = 0;
  std::size_t variant_count = 0;
  std::uint64_t total_variants = 0;
  bool truncated = false;
  std::size_t distinct_suites = 0;
};

struct DiversityReport {
  VariantOptions options;
  std::vector<DiversityRow> rows;
};

inline DiversityReport run_rq1(const Benchmark& b, const VariantOptions& opts = {}, unsigned jobs = 1) {
  DiversityReport report{opts, {}};
  for (const auto& entry : b.entries) {
    const SuiteFamily family = generate_family(entry.expression, opts, jobs);
    report.rows.push_back({entry.name, entry.text, entry.conditions, family.variant_count, family.total_variants,
                           family.truncated, family.distinct_count()});
  }
  return report;
}

struct TrialRecord {
  std::size_t trial = 0;
  std::size_t illegal_index = 0;  // 0-based position in the baseline suite
  Assignment illegal;
  bool success = false;
  std::optional<std::size_t> witness;  // first legal member of the family
};

struct ResilienceRow {
  std::string name;
  std::size_t conditions = 0;
  std::size_t variant_count = 0;
  std::size_t distinct_suites = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::vector<TrialRecord> records;

  double success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

struct ResilienceReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  VariantOptions options;
  std::vector<ResilienceRow> rows;
};

/// Index of the baseline vector forbidden in a given trial.
inline std::size_t rq2_pick(std::uint64_t seed, std::size_t entry, std::size_t trial, std::size_t suite_size) {
  std::mt19937_64 rng(detail::derive_seed(seed, entry, trial));
  return static_cast<std::size_t>(detail::bounded(rng, suite_size));
}

/// For each entry and trial: build the baseline suite on the normalized
/// structure, forbid one of its vectors (full assignment) picked with a
/// per-(entry, trial) seed, and succeed iff some family member avoids it.
/// The report is identical for any `jobs`.
inline ResilienceReport run_rq2(const Benchmark& b, std::size_t trials, std::uint64_t seed,
                                const VariantOptions& opts = {}, unsigned jobs = 1) {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  ResilienceReport report{seed, trials, opts, {}};

  for (std::size_t ei = 0; ei < b.entries.size(); ++ei) {
    const auto& entry = b.entries[ei];
    const TestSuite baseline = generate_suite(baseline_normalize(entry.expression));
    // The family depends only on the entry, so every trial shares it.
    const SuiteFamily family = generate_family(entry.expression, opts, jobs);

    ResilienceRow row{entry.name, entry.conditions, family.variant_count, family.distinct_count(), trials, 0, {}};
    row.records.resize(trials);
    detail::parallel_for(trials, jobs, [&](std::size_t t) {
      TrialRecord rec;
      rec.trial = t;
      rec.illegal_index = rq2_pick(seed, ei, t, baseline.size());
      rec.illegal = baseline.tests[rec.illegal_index].inputs;
      const ConstraintSet cs{{rec.illegal}};
      for (std::size_t m = 0; m < family.members.size() && !rec.witness; ++m) {
        const auto& tests = family.members[m].suite.tests;
        const bool clean = std::none_of(tests.begin(), tests.end(), [&](const TestVector& v) { return is_illegal(v, cs); });
        if (clean) rec.witness = m;
      }
      rec.success = rec.witness.has_value();
      row.records[t] = std::move(rec);
    });
    for (const auto& rec : row.records) row.successes += rec.success ? 1 : 0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace eqrobin
