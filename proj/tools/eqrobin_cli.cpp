// eqrobin: command-line front end for expression parsing, variant enumeration,
// suite generation, coverage checking, constraint-based selection and the
// benchmark experiments.
//
// Exit codes: 0 success, 1 usage error, 2 expression syntax error,
// 3 SBE violation, 4 no valid suite, 5 I/O or input-file error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "eqrobin/eqrobin.hpp"

namespace {

using namespace eqrobin;

constexpr int kExitUsage = 1;
constexpr int kExitSyntax = 2;
constexpr int kExitSbe = 3;
constexpr int kExitNoValidSuite = 4;
constexpr int kExitIo = 5;

struct Config {
  std::string expr;
  std::string input;
  std::string constraints;
  std::string costs;
  std::string benchmark;
  std::string suite_file;
  std::string experiment;
  std::size_t max_variants = 10000;
  bool assoc = false;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 100;
  std::string format;
  std::string output;
  unsigned jobs = 1;
  bool family = false;
  bool baseline = false;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Expression from --expr or --input; exactly one must be given unless
/// `optional` is set, in which case neither may be.
std::optional<Expression> load_expression(const Config& cfg, bool optional = false) {
  if (!cfg.expr.empty() && !cfg.input.empty()) throw InvalidArgument("give either --expr or --input, not both");
  if (!cfg.expr.empty()) return parse(cfg.expr);
  if (!cfg.input.empty()) return parse(read_text(cfg.input));
  if (optional) return std::nullopt;
  throw InvalidArgument("an expression is required (--expr or --input)");
}

VariantOptions variant_options(const Config& cfg, bool allow_sampling = true) {
  VariantOptions opts;
  opts.include_associativity = cfg.assoc;
  opts.max_variants = cfg.max_variants;
  if (allow_sampling) opts.sample_seed = cfg.seed;
  return opts;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + cfg.output + "'");
  out << text;
}

std::string dump(const io::ojson& doc) { return doc.dump(2) + "\n"; }

int cmd_parse(const Config& cfg) {
  const Expression e = *load_expression(cfg);
  const ConditionTable table = validate_sbe(e);
  const std::string fmt = cfg.format.empty() ? "table" : cfg.format;
  if (fmt == "json") {
    emit(cfg, dump(io::ojson{{"expression", serialize(e)}, {"columns", table.labels()}, {"n", table.size()}}));
  } else if (fmt == "csv") {
    std::string out = "index,label,variable,negated\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
      out += std::to_string(i) + ',' + io::csv_quote(table[i].label()) + ',' + io::csv_quote(table[i].variable) +
             ',' + (table[i].negated ? "true" : "false") + '\n';
    }
    emit(cfg, out);
  } else {
    std::string out = "expression: " + serialize(e) + "\nN: " + std::to_string(table.size()) + "\ncolumns:";
    for (const auto& l : table.labels()) out += " " + l;
    emit(cfg, out + "\n");
  }
  return 0;
}

int cmd_variants(const Config& cfg) {
  const VariantFamily family = generate_variants(*load_expression(cfg), variant_options(cfg));
  const std::string fmt = cfg.format.empty() ? "table" : cfg.format;
  if (fmt == "json") {
    emit(cfg, dump(io::to_json(family)));
  } else if (fmt == "csv") {
    std::string out = "index,variant\n";
    for (std::size_t i = 0; i < family.members.size(); ++i) {
      out += std::to_string(i) + ',' + io::csv_quote(serialize(family.members[i])) + '\n';
    }
    emit(cfg, out);
  } else {
    std::string out;
    for (const auto& m : family.members) out += serialize(m) + '\n';
    emit(cfg, out);
    std::cerr << family.members.size() << " variant(s) of " << family.total_variants << " in the full space"
              << (family.truncated ? ", truncated" : "") << '\n';
  }
  return 0;
}

int cmd_generate(const Config& cfg) {
  Expression e = *load_expression(cfg);
  validate_sbe(e);
  if (cfg.baseline) e = baseline_normalize(e);
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;

  if (!cfg.family) {
    const TestSuite suite = generate_suite(e);
    if (fmt == "json") {
      emit(cfg, dump(io::to_json(suite)));
    } else if (fmt == "csv") {
      emit(cfg, io::to_csv(suite));
    } else {
      emit(cfg, serialize(e) + "\n" + io::to_table(suite));
    }
    return 0;
  }

  const SuiteFamily family = generate_family(e, variant_options(cfg), cfg.jobs);
  if (fmt == "json") {
    emit(cfg, dump(io::to_json(family)));
  } else if (fmt == "csv") {
    std::string out = "member,test_case";
    for (const auto& l : validate_sbe(e).labels()) out += ',' + io::csv_quote(l);
    out += ",result\n";
    // Rows use the source's condition order so every member shares one header.
    for (std::size_t m = 0; m < family.members.size(); ++m) {
      TestSuite view = family.members[m].suite;
      view.conditions = validate_sbe(e);
      out += io::to_csv_rows(view, std::to_string(m));
    }
    emit(cfg, out);
  } else {
    std::string out = std::to_string(family.variant_count) + " variant(s), " +
                      std::to_string(family.distinct_count()) + " distinct suite(s)" +
                      (family.truncated ? " (truncated)" : "") + "\n";
    for (std::size_t m = 0; m < family.members.size(); ++m) {
      out += "\n# suite " + std::to_string(m) + " (variant " + std::to_string(family.members[m].variant_index) +
             "): " + serialize(family.members[m].variant()) + "\n" + io::to_table(family.members[m].suite);
    }
    emit(cfg, out);
  }
  return 0;
}

int cmd_check(const Config& cfg) {
  const io::json doc = io::read_json_file(cfg.suite_file);
  std::optional<Expression> e = load_expression(cfg, true);
  if (!e) {
    if (!doc.is_object() || !doc.contains("expression") || !doc["expression"].is_string()) {
      throw InvalidArgument("no --expr/--input given and the suite file has no \"expression\"");
    }
    e = parse(doc["expression"].get<std::string>());
  }
  const TestSuite suite = io::suite_from_json(doc, *e);
  CoverageReport report;
  try {
    report = check_unique_cause(*e, suite);
  } catch (const DomainError& err) {
    throw IoError(std::string("suite does not match the expression: ") + err.what());
  }
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  if (fmt == "table") {
    emit(cfg, io::to_table(report));
  } else if (fmt == "csv") {
    std::string out = "label,first,second\n";
    for (const auto& c : report.conditions) {
      out += io::csv_quote(c.condition.label()) + ',' + (c.pair ? std::to_string(c.pair->first + 1) : "") + ',' +
             (c.pair ? std::to_string(c.pair->second + 1) : "") + '\n';
    }
    emit(cfg, out);
  } else {
    emit(cfg, dump(io::to_json(report)));
  }
  return 0;
}

int cmd_pipeline(const Config& cfg) {
  Expression e = *load_expression(cfg);
  validate_sbe(e);
  if (cfg.baseline) e = baseline_normalize(e);
  const ConstraintSet cs = cfg.constraints.empty() ? ConstraintSet{}
                                                   : io::constraints_from_json(io::read_json_file(cfg.constraints));
  std::optional<CostModel> cm;
  if (!cfg.costs.empty()) cm = io::cost_model_from_json(io::read_json_file(cfg.costs));

  const SuiteFamily family = generate_family(e, variant_options(cfg), cfg.jobs);
  SelectionReport report;
  try {
    report = select(family, cs, cm);
  } catch (const DomainError& err) {
    throw IoError(std::string("constraints do not match the expression: ") + err.what());
  }

  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  if (fmt == "table") {
    std::string out = std::string("status: ") + to_string(report.status) + "\nvalid suites: " +
                      std::to_string(report.partition.valid.size()) + " of " +
                      std::to_string(family.distinct_count()) + "\n";
    if (report.selected) {
      const auto& member = family.members[*report.selected];
      out += "selected: suite " + std::to_string(*report.selected) + " (variant " +
             std::to_string(member.variant_index) + "): " + serialize(member.variant()) + "\ncost: " +
             io::fixed(report.ranking.front().cost, 3) + "\n" + io::to_table(member.suite);
    }
    emit(cfg, out);
  } else if (fmt == "csv") {
    std::string out = "member_index,variant_index,variant,valid,offending,cost,selected\n";
    for (std::size_t m = 0; m < family.members.size(); ++m) {
      std::string cost;
      for (const auto& r : report.ranking) {
        if (r.member_index == m) cost = io::fixed(r.cost, 6);
      }
      std::size_t offending = 0;
      for (const auto& d : report.partition.discarded) {
        if (d.member_index == m) offending = d.offending.size();
      }
      out += std::to_string(m) + ',' + std::to_string(family.members[m].variant_index) + ',' +
             io::csv_quote(serialize(family.members[m].variant())) + ',' + (offending == 0 ? "true" : "false") +
             ',' + std::to_string(offending) + ',' + cost + ',' +
             (report.selected == m ? "true" : "false") + '\n';
    }
    emit(cfg, out);
  } else {
    emit(cfg, dump(io::to_json(report, family)));
  }
  if (report.status == SelectionStatus::NoneValid) {
    std::cerr << "no suite in the family avoids every forbidden input\n";
    return kExitNoValidSuite;
  }
  return 0;
}

int cmd_experiment(const Config& cfg) {
  if (cfg.benchmark.empty()) throw InvalidArgument("--benchmark is required");
  const Benchmark bench = load_benchmark(cfg.benchmark);
  for (const auto& r : bench.rejected) std::cerr << "rejected entry " << r.index << " (" << r.name << "): " << r.error << '\n';
  // Families are truncated deterministically here; --seed drives trial selection.
  const VariantOptions opts = variant_options(cfg, false);
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;

  if (cfg.experiment == "rq1") {
    const DiversityReport report = run_rq1(bench, opts, cfg.jobs);
    if (fmt == "csv") {
      emit(cfg, io::to_csv(report));
    } else if (fmt == "table") {
      std::string out;
      for (const auto& row : report.rows) {
        out += row.name + ": N=" + std::to_string(row.conditions) + " variants=" + std::to_string(row.variant_count) +
               (row.truncated ? " (truncated)" : "") + " distinct_suites=" + std::to_string(row.distinct_suites) + "\n";
      }
      emit(cfg, out);
    } else {
      emit(cfg, dump(io::to_json(report, bench.rejected)));
    }
    return 0;
  }

  const ResilienceReport report = run_rq2(bench, cfg.trials, cfg.seed.value_or(0), opts, cfg.jobs);
  if (fmt == "csv") {
    emit(cfg, io::to_csv(report));
  } else if (fmt == "table") {
    std::string out;
    for (const auto& row : report.rows) {
      out += row.name + ": N=" + std::to_string(row.conditions) + " successes=" + std::to_string(row.successes) + "/" +
             std::to_string(row.trials) + " rate=" + io::fixed(row.success_rate(), 4) + "\n";
    }
    emit(cfg, out);
  } else {
    emit(cfg, dump(io::to_json(report, bench.rejected)));
  }
  return 0;
}

std::size_t default_max_variants() {
  if (const char* env = std::getenv("EQROBIN_MAX_VARIANTS")) {
    try {
      const long long v = std::stoll(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring invalid EQROBIN_MAX_VARIANTS='" << env << "'\n";
  }
  return 10000;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Families of minimal unique-cause MC/DC test suites for singular boolean expressions"};
  app.require_subcommand(1);
  Config cfg;
  cfg.max_variants = default_max_variants();

  const auto add_expr = [&](CLI::App* sub) {
    sub->add_option("--expr", cfg.expr, "Expression text");
    sub->add_option("--input", cfg.input, "File containing the expression text");
  };
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--output", cfg.output, "Output file (default: standard output)");
  };
  const auto add_variant_opts = [&](CLI::App* sub) {
    sub->add_option("--max-variants", cfg.max_variants, "Cap on the number of variants (env EQROBIN_MAX_VARIANTS)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--assoc", cfg.assoc, "Also regroup same-operator chains");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* parse_cmd = app.add_subcommand("parse", "Parse and validate an expression");
  add_expr(parse_cmd);
  add_output(parse_cmd);

  auto* variants_cmd = app.add_subcommand("variants", "List equivalent rearrangements");
  add_expr(variants_cmd);
  add_output(variants_cmd);
  add_variant_opts(variants_cmd);
  variants_cmd->add_option("--seed", cfg.seed, "Sample uniformly with this seed when the cap is hit");

  auto* generate_cmd = app.add_subcommand("generate", "Generate the N+1 suite (or the suite family)");
  add_expr(generate_cmd);
  add_output(generate_cmd);
  add_variant_opts(generate_cmd);
  generate_cmd->add_option("--seed", cfg.seed, "Sample uniformly with this seed when the cap is hit");
  generate_cmd->add_flag("--family", cfg.family, "Generate one suite per variant");
  generate_cmd->add_flag("--baseline", cfg.baseline, "Normalize the expression to the baseline order first");

  auto* check_cmd = app.add_subcommand("check", "Check unique-cause coverage of a suite file");
  add_expr(check_cmd);
  add_output(check_cmd);
  check_cmd->add_option("suite", cfg.suite_file, "Suite JSON file")->required();

  auto* pipeline_cmd = app.add_subcommand("pipeline", "Generate, filter by constraints and select a suite");
  add_expr(pipeline_cmd);
  add_output(pipeline_cmd);
  add_variant_opts(pipeline_cmd);
  pipeline_cmd->add_option("--seed", cfg.seed, "Sample uniformly with this seed when the cap is hit");
  pipeline_cmd->add_option("--constraints", cfg.constraints, "Constraints JSON file");
  pipeline_cmd->add_option("--costs", cfg.costs, "Cost model JSON file");
  pipeline_cmd->add_flag("--baseline", cfg.baseline, "Normalize the expression to the baseline order first");

  auto* experiment_cmd = app.add_subcommand("experiment", "Run the rq1 or rq2 experiment over a benchmark");
  add_output(experiment_cmd);
  add_variant_opts(experiment_cmd);
  experiment_cmd->add_option("kind", cfg.experiment, "rq1 or rq2")->required()->check(CLI::IsMember({"rq1", "rq2"}));
  experiment_cmd->add_option("--benchmark", cfg.benchmark, "Benchmark JSON file")->required();
  experiment_cmd->add_option("--trials", cfg.trials, "Trials per entry (rq2)")->check(CLI::PositiveNumber);
  experiment_cmd->add_option("--seed", cfg.seed, "Master seed for trial selection (rq2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*parse_cmd) return cmd_parse(cfg);
    if (*variants_cmd) return cmd_variants(cfg);
    if (*generate_cmd) return cmd_generate(cfg);
    if (*check_cmd) return cmd_check(cfg);
    if (*pipeline_cmd) return cmd_pipeline(cfg);
    if (*experiment_cmd) return cmd_experiment(cfg);
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitSyntax;
  } catch (const SbeViolation& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitSbe;
  } catch (const IoError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitIo;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
