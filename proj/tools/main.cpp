// Command-line frontend for the cevchart shared library. Data documents go to
// stdout (or --out); diagnostics go to stderr. Exit status: 0 success, 1 data
// error, 2 configuration error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cevchart.h"

namespace {

int exit_code_for(int status) {
  switch (status) {
    case CEVC_OK: return 0;
    case CEVC_ERR_CONFIG:
    case CEVC_ERR_NULL_ARG:
    case CEVC_ERR_INTERNAL: return 2;
    default: return 1;  // data-driven failures
  }
}

int report_failure(int status) {
  std::cerr << "error: " << cevc_last_error() << "\n";
  return exit_code_for(status);
}

// Writes to stdout when path is empty or "-".
int emit(const char* doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return 1;
  }
  out << doc;
  if (!out.good()) {
    std::cerr << "error: short write to '" << path << "'\n";
    return 1;
  }
  return 0;
}

int emit_and_free(char* doc, const std::string& path) {
  const int rc = emit(doc, path);
  cevc_string_free(doc);
  return rc;
}

struct MatrixGuard {
  cevc_matrix* m = nullptr;
  ~MatrixGuard() { cevc_matrix_free(m); }
};

struct Phase1Guard {
  cevc_phase1* p = nullptr;
  ~Phase1Guard() { cevc_phase1_free(p); }
};

struct CommonEstimation {
  double tolerance = 1e-8;
  int max_iterations = 1000;
  std::string variant = "ap2";
};

void add_estimation_flags(CLI::App* cmd, CommonEstimation* est) {
  cmd->add_option("--tolerance", est->tolerance, "Relative convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iterations", est->max_iterations, "Iteration cap")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  cmd->add_option("--variant", est->variant, "Sigma update: ap1 or ap2")
      ->check(CLI::IsMember({"ap1", "ap2"}))
      ->capture_default_str();
}

struct InputFlags {
  std::string input;
  double threshold = 0.0;
  int subgroup_size = 5;
};

void add_input_flags(CLI::App* cmd, InputFlags* in) {
  cmd->add_option("--input", in->input, "CSV file, one subgroup per row")->required();
  cmd->add_option("--threshold", in->threshold, "Detection limit C")->required();
  cmd->add_option("--subgroup-size", in->subgroup_size, "Values per subgroup")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CEV control charts for left-censored measurements"};
  app.require_subcommand(1);
  app.fallthrough(true);  // --out may follow the subcommand

  std::string out_path;
  app.add_option("--out", out_path, "Write the main document here instead of stdout");

  // estimate ---------------------------------------------------------------
  auto* estimate_cmd = app.add_subcommand("estimate", "Iterative in-control (mu, sigma) estimate");
  InputFlags est_in;
  CommonEstimation est_cfg;
  bool with_trace = false;
  add_input_flags(estimate_cmd, &est_in);
  add_estimation_flags(estimate_cmd, &est_cfg);
  estimate_cmd->add_flag("--trace", with_trace, "Include the per-iteration trace");

  // compare-naive ------------------------------------------------------------
  auto* naive_cmd =
      app.add_subcommand("compare-naive", "Four substitution baselines next to the CEV estimate");
  InputFlags naive_in;
  CommonEstimation naive_cfg;
  add_input_flags(naive_cmd, &naive_in);
  add_estimation_flags(naive_cmd, &naive_cfg);

  // limits -------------------------------------------------------------------
  auto* limits_cmd = app.add_subcommand("limits", "Standardized UCL coefficients for (n, Pc)");
  int limits_n = 5;
  double limits_pc = 0.0;
  std::string limits_source = "table";
  double limits_alpha = 0.0027;
  std::int64_t limits_replicates = 1000000;
  std::uint64_t limits_seed = 0;
  limits_cmd->add_option("--n", limits_n, "Subgroup size")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  limits_cmd->add_option("--pc", limits_pc, "Censoring proportion in [0, 1)")
      ->check(CLI::Range(0.0, 0.9999999999))
      ->capture_default_str();
  limits_cmd->add_option("--limit-source", limits_source, "table, montecarlo or classical")
      ->check(CLI::IsMember({"table", "montecarlo", "classical"}))
      ->capture_default_str();
  limits_cmd->add_option("--alpha", limits_alpha, "One-sided false-alarm risk")
      ->capture_default_str();
  limits_cmd->add_option("--replicates", limits_replicates, "Monte Carlo replicates")
      ->capture_default_str();
  limits_cmd->add_option("--seed", limits_seed, "Monte Carlo seed")->capture_default_str();

  // tables ---------------------------------------------------------------------
  auto* tables_cmd =
      app.add_subcommand("tables", "Paper vs Monte Carlo vs classical-constant comparison");
  double tables_alpha = 0.0027;
  std::int64_t tables_replicates = 1000000;
  std::uint64_t tables_seed = 0;
  bool tables_csv = false;
  tables_cmd->add_option("--alpha", tables_alpha, "One-sided false-alarm risk")
      ->capture_default_str();
  tables_cmd->add_option("--replicates", tables_replicates, "Replicates per table key")
      ->capture_default_str();
  tables_cmd->add_option("--seed", tables_seed, "Base seed")->capture_default_str();
  tables_cmd->add_flag("--csv", tables_csv, "Emit the shipped coefficient table as CSV and exit");

  // phase1 -----------------------------------------------------------------------
  auto* phase1_cmd = app.add_subcommand("phase1", "Initial implementation with exclusion rounds");
  InputFlags p1_in;
  CommonEstimation p1_cfg;
  std::string p1_source = "table";
  int p1_max_rounds = 10;
  double p1_alpha = 0.0027;
  std::int64_t p1_replicates = 1000000;
  std::uint64_t p1_seed = 0;
  std::string p1_xbar_svg, p1_s_svg, p1_units;
  add_input_flags(phase1_cmd, &p1_in);
  add_estimation_flags(phase1_cmd, &p1_cfg);
  phase1_cmd->add_option("--limit-source", p1_source, "table or montecarlo")
      ->check(CLI::IsMember({"table", "montecarlo"}))
      ->capture_default_str();
  phase1_cmd->add_option("--max-rounds", p1_max_rounds, "Exclusion round cap")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  phase1_cmd->add_option("--alpha", p1_alpha, "Monte Carlo false-alarm risk")
      ->capture_default_str();
  phase1_cmd->add_option("--replicates", p1_replicates, "Monte Carlo replicates")
      ->capture_default_str();
  phase1_cmd->add_option("--seed", p1_seed, "Monte Carlo seed")->capture_default_str();
  phase1_cmd->add_option("--xbar-svg", p1_xbar_svg, "Write the X-bar chart SVG here");
  phase1_cmd->add_option("--s-svg", p1_s_svg, "Write the S chart SVG here");
  phase1_cmd->add_option("--units", p1_units, "Measurement units for chart axis labels");

  // monitor -------------------------------------------------------------------------
  auto* monitor_cmd = app.add_subcommand("monitor", "Phase II check against a saved baseline");
  std::string mon_baseline, mon_input;
  double mon_threshold = 0.0;
  bool mon_threshold_set = false;
  monitor_cmd->add_option("--baseline", mon_baseline, "phase1 JSON output")->required();
  monitor_cmd->add_option("--input", mon_input, "CSV of new subgroups")->required();
  monitor_cmd->add_option("--threshold", mon_threshold,
                          "Detection limit (defaults to the baseline's)")
      ->each([&](const std::string&) { mon_threshold_set = true; });

  // simulate -----------------------------------------------------------------------
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate a censored CSV dataset");
  double sim_mu = 0.0, sim_sigma = 1.0, sim_threshold = 0.0;
  int sim_k = 25, sim_n = 5;
  std::uint64_t sim_seed = 1;
  simulate_cmd->add_option("--mu", sim_mu, "Process mean")->required();
  simulate_cmd->add_option("--sigma", sim_sigma, "Process standard deviation")
      ->check(CLI::PositiveNumber)
      ->required();
  simulate_cmd->add_option("--threshold", sim_threshold, "Detection limit C")->required();
  simulate_cmd->add_option("--k", sim_k, "Subgroups")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  simulate_cmd->add_option("--n", sim_n, "Subgroup size")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  simulate_cmd->add_option("--seed", sim_seed, "Stream seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto check_alpha = [](double alpha) {
    if (alpha > 0.0 && alpha < 0.5) return 0;
    std::cerr << "error: --alpha must lie in (0, 0.5)\n";
    return 2;
  };
  auto check_replicates = [](std::int64_t replicates) {
    if (replicates >= 1000) return 0;
    std::cerr << "error: --replicates must be >= 1000\n";
    return 2;
  };

  if (estimate_cmd->parsed()) {
    MatrixGuard m;
    int rc = cevc_matrix_from_csv(est_in.input.c_str(), est_in.threshold, est_in.subgroup_size,
                                  &m.m);
    if (rc != CEVC_OK) return report_failure(rc);
    char* doc = nullptr;
    rc = cevc_estimate_json(m.m, est_cfg.tolerance, est_cfg.max_iterations,
                            est_cfg.variant.c_str(), with_trace ? 1 : 0, &doc);
    if (rc != CEVC_OK) return report_failure(rc);
    return emit_and_free(doc, out_path);
  }

  if (naive_cmd->parsed()) {
    MatrixGuard m;
    int rc = cevc_matrix_from_csv(naive_in.input.c_str(), naive_in.threshold,
                                  naive_in.subgroup_size, &m.m);
    if (rc != CEVC_OK) return report_failure(rc);
    char* doc = nullptr;
    rc = cevc_compare_naive_json(m.m, naive_cfg.tolerance, naive_cfg.max_iterations,
                                 naive_cfg.variant.c_str(), &doc);
    if (rc != CEVC_OK) return report_failure(rc);
    return emit_and_free(doc, out_path);
  }

  if (limits_cmd->parsed()) {
    if (limits_source == "montecarlo") {
      if (int rc = check_alpha(limits_alpha)) return rc;
      if (int rc = check_replicates(limits_replicates)) return rc;
    }
    char* doc = nullptr;
    const int rc = cevc_limits_json(limits_n, limits_pc, limits_source.c_str(), limits_alpha,
                                    limits_replicates, limits_seed, &doc);
    if (rc != CEVC_OK) return report_failure(rc);
    return emit_and_free(doc, out_path);
  }

  if (tables_cmd->parsed()) {
    char* doc = nullptr;
    if (tables_csv) {
      const int rc = cevc_coefficient_table_csv(&doc);
      if (rc != CEVC_OK) return report_failure(rc);
      return emit_and_free(doc, out_path);
    }
    if (int rc = check_alpha(tables_alpha)) return rc;
    if (int rc = check_replicates(tables_replicates)) return rc;
    const int rc = cevc_tables_report_json(tables_alpha, tables_replicates, tables_seed, &doc);
    if (rc != CEVC_OK) return report_failure(rc);
    return emit_and_free(doc, out_path);
  }

  if (phase1_cmd->parsed()) {
    if (p1_source == "montecarlo") {
      if (int rc = check_alpha(p1_alpha)) return rc;
      if (int rc = check_replicates(p1_replicates)) return rc;
    }
    MatrixGuard m;
    int rc =
        cevc_matrix_from_csv(p1_in.input.c_str(), p1_in.threshold, p1_in.subgroup_size, &m.m);
    if (rc != CEVC_OK) return report_failure(rc);
    Phase1Guard p;
    rc = cevc_phase1_run(m.m, p1_cfg.tolerance, p1_cfg.max_iterations, p1_cfg.variant.c_str(),
                         p1_source.c_str(), p1_max_rounds, p1_alpha, p1_replicates, p1_seed,
                         &p.p);
    if (rc != CEVC_OK) return report_failure(rc);

    char* doc = nullptr;
    rc = cevc_phase1_to_json(p.p, &doc);
    if (rc != CEVC_OK) return report_failure(rc);
    if (int erc = emit_and_free(doc, out_path)) return erc;

    const char* units = p1_units.empty() ? nullptr : p1_units.c_str();
    for (const auto& [kind, path] : {std::pair{"xbar", p1_xbar_svg}, std::pair{"s", p1_s_svg}}) {
      if (path.empty()) continue;
      char* svg = nullptr;
      rc = cevc_phase1_render(p.p, kind, "svg", units, &svg);
      if (rc != CEVC_OK) return report_failure(rc);
      if (int erc = emit_and_free(svg, path)) return erc;
    }
    return 0;
  }

  if (monitor_cmd->parsed()) {
    std::ifstream base_in(mon_baseline, std::ios::binary);
    if (!base_in) {
      std::cerr << "error: cannot open '" << mon_baseline << "'\n";
      return 1;
    }
    std::stringstream buffer;
    buffer << base_in.rdbuf();
    Phase1Guard p;
    int rc = cevc_phase1_from_json(buffer.str().c_str(), &p.p);
    if (rc != CEVC_OK) return report_failure(rc);

    // The baseline carries n and the detection limit; reuse them unless the
    // caller overrides the threshold.
    int n = 0;
    double baseline_limit = 0.0;
    rc = cevc_phase1_info(p.p, &n, &baseline_limit);
    if (rc != CEVC_OK) return report_failure(rc);
    const double threshold = mon_threshold_set ? mon_threshold : baseline_limit;

    MatrixGuard m;
    rc = cevc_matrix_from_csv(mon_input.c_str(), threshold, n, &m.m);
    if (rc != CEVC_OK) return report_failure(rc);
    char* doc = nullptr;
    rc = cevc_monitor_json(p.p, m.m, &doc);
    if (rc != CEVC_OK) return report_failure(rc);
    return emit_and_free(doc, out_path);
  }

  if (simulate_cmd->parsed()) {
    MatrixGuard m;
    int rc = cevc_matrix_generate(sim_mu, sim_sigma, sim_threshold, sim_k, sim_n, sim_seed, &m.m);
    if (rc != CEVC_OK) return report_failure(rc);
    char* doc = nullptr;
    rc = cevc_matrix_to_csv(m.m, &doc);
    if (rc != CEVC_OK) return report_failure(rc);
    return emit_and_free(doc, out_path);
  }

  std::cerr << "error: no command selected\n";
  return 2;
}
