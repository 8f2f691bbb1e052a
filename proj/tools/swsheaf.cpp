// swsheaf: switching-sheaf cohomology of gate-level netlists.
//
//   swsheaf analyze <file> [--json] [--emit-d0] [--dot] [--mv] [--no-oracle] [--oracle-cap N]
//   swsheaf mv-replay <file> [--json]
//   swsheaf dot <file> [--no-analysis]
//   swsheaf paper-suite [--dir D] [--filter F]
//   swsheaf conjecture --trials N --max-gates G --seed S [--json]
//
// Exit status: 0 success, 1 input/validation error, 2 internal cross-check
// failure (or a failing paper-suite check).

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swsheaf/cohomology.hpp"
#include "swsheaf/mayer_vietoris.hpp"
#include "swsheaf/netlist.hpp"
#include "swsheaf/paper_suite.hpp"
#include "swsheaf/report.hpp"
#include "swsheaf/sheaf.hpp"

#ifndef SWSHEAF_CIRCUITS_DIR
#define SWSHEAF_CIRCUITS_DIR "circuits"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCrossCheck = 2;

struct AnalysisConfig {
  std::string input;
  bool json = false;
  bool emit_d0 = false;
  bool emit_dot = false;
  bool run_oracle = true;
  bool run_mv = false;
  std::size_t oracle_cap = swsheaf::kDefaultOracleCap;
};

int report_input_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << '\n';
  return kExitInput;
}

int cmd_analyze(const AnalysisConfig& cfg) {
  using namespace swsheaf;
  Netlist n;
  try {
    n = parse_netlist_file(cfg.input);
  } catch (const std::exception& e) {
    return report_input_error(e);
  }
  const CohomologyOptions opts{.run_oracle = cfg.run_oracle, .oracle_cap = cfg.oracle_cap};
  const CechComplex cx = assemble_complex(n);
  CohomologyReport report;
  std::optional<ReplayResult> mv;
  try {
    if (cfg.run_mv) {
      mv = replay(n, opts);
      report = mv->report;
    } else {
      report = compute_cohomology(cx, opts);
    }
  } catch (const CrossCheckFailure& e) {
    std::cerr << "cross-check failure: " << e.what() << '\n';
    return kExitCrossCheck;
  }
  const bool lift_failed = report.qls_lift_check == false;

  if (cfg.json) {
    Json j = to_json(report);
    if (cfg.emit_d0) {
      j["d0"] = Json{{"rows", cx.row_labels()}, {"columns", cx.column_labels()}};
      Json rows = Json::array();
      for (std::size_t r = 0; r < cx.d0().rows(); ++r) rows.push_back(cx.d0().row(r).to_string());
      j["d0"]["matrix"] = rows;
    }
    if (mv) {
      j["mv_steps"] = to_json(mv->ledger.history());
      j["mv_cross_check"] = "passed";
    }
    if (cfg.emit_dot) j["dot"] = render_dot(cx, report);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << render_text(report);
    if (cfg.emit_d0) std::cout << "d0:\n" << cx.dump_d0();
    if (mv) std::cout << render_steps_text(mv->ledger.history()) << "cross-check: passed\n";
    if (cfg.emit_dot) std::cout << render_dot(cx, report);
  }
  if (lift_failed) {
    std::cerr << "cross-check failure: QLS lift check failed\n";
    return kExitCrossCheck;
  }
  return kExitOk;
}

int cmd_mv_replay(const std::string& input, bool json) {
  using namespace swsheaf;
  Netlist n;
  try {
    n = parse_netlist_file(input);
  } catch (const std::exception& e) {
    return report_input_error(e);
  }
  try {
    const ReplayResult r = replay(n, {.run_oracle = false});
    if (json) {
      Json j;
      j["steps"] = to_json(r.ledger.history());
      j["dim_h0"] = r.ledger.dim_h0();
      j["dim_h1"] = r.ledger.dim_h1();
      j["cross_check"] = "passed";
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << render_steps_text(r.ledger.history());
      std::cout << "final (dim H0, dim H1) = (" << r.ledger.dim_h0() << ", " << r.ledger.dim_h1()
                << "), direct computation agrees\n";
    }
  } catch (const CrossCheckFailure& e) {
    std::cerr << "cross-check failure: " << e.what() << '\n';
    return kExitCrossCheck;
  }
  return kExitOk;
}

int cmd_dot(const std::string& input, bool analyze) {
  using namespace swsheaf;
  Netlist n;
  try {
    n = parse_netlist_file(input);
  } catch (const std::exception& e) {
    return report_input_error(e);
  }
  const CechComplex cx = assemble_complex(n);
  std::optional<CohomologyReport> report;
  if (analyze) report = compute_cohomology(cx, {.run_oracle = false});
  std::cout << render_dot(cx, report);
  return kExitOk;
}

int cmd_paper_suite(const std::string& dir, const std::string& filter) {
  const auto results = swsheaf::run_paper_suite(dir, filter);
  std::size_t failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << '\n';
    if (!r.passed) {
      ++failed;
      std::cout << "      " << r.detail << '\n';
    }
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  if (results.empty()) {
    std::cerr << "no checks matched filter '" << filter << "'\n";
    return kExitInput;
  }
  return failed == 0 ? kExitOk : kExitCrossCheck;
}

int cmd_conjecture(std::size_t trials, std::size_t max_gates, std::uint64_t seed, bool json) {
  using namespace swsheaf;
  const ConjectureReport rep = dag_conjecture_experiment(trials, max_gates, seed);
  if (json) {
    std::cout << to_json(rep).dump(2) << '\n';
    return kExitOk;
  }
  std::cout << "trials=" << rep.trials.size() << " seed=" << seed << " max_gates=" << max_gates << '\n';
  for (const auto& t : rep.trials) {
    std::cout << "  trial " << t.index << ": gates=" << t.gates << " edges=" << t.edges << " dim H0=" << t.dim_h0
              << " qls=" << t.qls_count << " span(lifted qls)=" << t.qls_span_dim << "  " << to_string(t.verdict)
              << '\n';
  }
  std::cout << "pass=" << rep.count(ConjectureVerdict::Pass) << " fail=" << rep.count(ConjectureVerdict::Fail)
            << " skipped=" << rep.count(ConjectureVerdict::Skipped) << '\n';
  for (const auto& t : rep.trials) {
    if (t.verdict != ConjectureVerdict::Fail) continue;
    std::cout << "\ncounterexample (trial " << t.index << "):\n" << t.netlist_text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switching-sheaf cohomology analyzer for gate-level netlists"};
  app.require_subcommand(1);

  AnalysisConfig cfg;
  bool no_oracle = false;
  auto* analyze = app.add_subcommand("analyze", "Compute H0/H1 and classify sections");
  analyze->add_option("input", cfg.input, "Netlist file")->required();
  analyze->add_flag("--json", cfg.json, "Emit JSON");
  analyze->add_flag("--emit-d0", cfg.emit_d0, "Include the labeled coboundary matrix");
  analyze->add_flag("--dot", cfg.emit_dot, "Include a Graphviz rendering");
  analyze->add_flag("--mv", cfg.run_mv, "Also run the incremental replay and cross-check it");
  analyze->add_flag("--no-oracle", no_oracle, "Skip brute-force QLS enumeration");
  analyze->add_option("--oracle-cap", cfg.oracle_cap, "Maximum edge count for QLS enumeration")
      ->check(CLI::Range(std::size_t{1}, std::size_t{63}));

  std::string mv_input;
  bool mv_json = false;
  auto* mv = app.add_subcommand("mv-replay", "Incremental gate-by-gate, wire-by-wire analysis");
  mv->add_option("input", mv_input, "Netlist file")->required();
  mv->add_flag("--json", mv_json, "Emit the step log as JSON");

  std::string dot_input;
  bool dot_no_analysis = false;
  auto* dot = app.add_subcommand("dot", "Render the circuit graph as Graphviz DOT");
  dot->add_option("input", dot_input, "Netlist file")->required();
  dot->add_flag("--no-analysis", dot_no_analysis, "Do not highlight H1 support");

  std::string suite_dir = SWSHEAF_CIRCUITS_DIR;
  std::string suite_filter;
  auto* suite = app.add_subcommand("paper-suite", "Run golden checks on the bundled reference circuits");
  suite->add_option("--dir", suite_dir, "Directory holding the bundled netlists");
  suite->add_option("--filter", suite_filter, "Only run checks whose name contains this string");

  std::size_t trials = 100;
  std::size_t max_gates = 6;
  std::uint64_t seed = 42;
  bool conj_json = false;
  auto* conj = app.add_subcommand("conjecture", "Test whether lifted QLS span H0 on random directed trees");
  conj->add_option("--trials", trials, "Number of random trees");
  conj->add_option("--max-gates", max_gates, "Maximum gates per tree");
  conj->add_option("--seed", seed, "RNG seed");
  conj->add_flag("--json", conj_json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) {
      cfg.run_oracle = !no_oracle;
      return cmd_analyze(cfg);
    }
    if (*mv) return cmd_mv_replay(mv_input, mv_json);
    if (*dot) return cmd_dot(dot_input, !dot_no_analysis);
    if (*suite) return cmd_paper_suite(suite_dir, suite_filter);
    if (*conj) return cmd_conjecture(trials, max_gates, seed, conj_json);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitCrossCheck;
  }
  return kExitOk;
}
