#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cev/normal.hpp"

namespace cev {

struct SimulationConfig {
  double alpha = 0.0027;               // one-sided false-alarm risk
  std::int64_t replicates = 1000000;   // simulated subgroups
  std::uint64_t seed = 0;
  int n = 5;                           // subgroup size
  double p_c = 0.0;                    // censoring proportion under N(0,1)

  void validate() const;
};

enum class Provenance { MonteCarlo, PaperTable, ClassicalConstant };

// Standardized upper-control-limit coefficients for the CEV X-bar and S charts.
struct LimitCoefficients {
  double ucl_xbar;
  double ucl_s;
  Provenance provenance;
  int n;
  double p_c;
  std::optional<SimulationConfig> sim_config;  // echoed for Monte Carlo results
  bool clamped = false;                        // table lookup hit a table edge
  std::vector<std::string> warnings;
};

struct CoefficientRow {
  int n;
  double one_minus_pc;
  double ucl_xbar;
  double ucl_s;
};

// Published coefficient rows keyed by (n, 1 - Pc), sorted ascending.
class CoefficientTable {
 public:
  explicit CoefficientTable(std::vector<CoefficientRow> rows);

  // The 48 published rows for n = 3, 5, 10, 20.
  static const CoefficientTable& builtin();

  const std::vector<CoefficientRow>& rows() const { return rows_; }
  std::vector<int> subgroup_sizes() const;
  std::string to_csv() const;  // header: n,one_minus_pc,ucl_xbar,ucl_s

 private:
  std::vector<CoefficientRow> rows_;
};

/// Monte Carlo derivation under an in-control N(0,1) model: per replicate,
/// draw n values, replace every value at or below C* = quantile(p_c) by the
/// CEV weight at C*, record subgroup mean and sample standard deviation, and
/// return the empirical (1 - alpha) quantile of each statistic (order
/// statistic at index ceil((1 - alpha) replicates), no interpolation).
/// Deterministic for a fixed config, whatever `threads` is (0 = auto).
LimitCoefficients simulate_coefficients(const SimulationConfig& config, int threads = 0);

/// Table lookup: piecewise linear in log10(1 - p_c) inside each tabulated n,
/// then linear in 1/sqrt(n) between the two nearest tabulated n. Exact values
/// at exact keys; clamps (and flags) outside the tabulated ranges.
LimitCoefficients table_coefficients(int n, double p_c,
                                     const CoefficientTable& table = CoefficientTable::builtin());

/// A3 / B4 from the classical constants, provenance ClassicalConstant.
LimitCoefficients classical_coefficients(int n, double p_c);

/// Absolute limits: UCL_xbar = coeff * sigma + mu, UCL_s = coeff * sigma.
std::pair<double, double> absolute_limits(const ProcessParams& params,
                                          const LimitCoefficients& coeffs);

struct TableComparisonRow {
  int n;
  double one_minus_pc;
  double paper_xbar, paper_s;
  double mc_xbar, mc_s;
  double a3, b4;
};

struct TableComparisonReport {
  double alpha;
  std::int64_t replicates;
  std::uint64_t seed;
  std::vector<TableComparisonRow> rows;
};

/// Re-simulates every published (n, 1 - Pc) key and reports paper value,
/// Monte Carlo value and classical constant side by side. Each row draws from
/// a sub-seed derived from (seed, row index), so the report is deterministic.
TableComparisonReport reproduce_paper_tables(double alpha, std::int64_t replicates,
                                             std::uint64_t seed);

}  // namespace cev
