#pragma once

#include <utility>
#include <vector>

#include "cev/estimator.hpp"
#include "cev/limits.hpp"

namespace cev {

// k subgroups of size n, row-major. Cells at or below the detection limit are
// stored at the limit itself and count as censored.
class SubgroupMatrix {
 public:
  SubgroupMatrix(int k, int n, std::vector<double> data, CensoringScheme scheme);

  int k() const { return k_; }
  int n() const { return n_; }
  const CensoringScheme& scheme() const { return scheme_; }
  const std::vector<double>& data() const { return data_; }

  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  bool censored(int i, int j) const { return at(i, j) <= scheme_.limit_c; }
  int censored_count() const;

  CensoredSample flatten() const;
  SubgroupMatrix without_rows(const std::vector<int>& drop) const;

 private:
  int k_;
  int n_;
  std::vector<double> data_;
  CensoringScheme scheme_;
};

enum class ChartKind { CevXbar, CevS };

struct ChartPoint {
  int subgroup;  // original row index
  double statistic;
};

struct ChartReport {
  ChartKind chart_kind;
  std::vector<ChartPoint> points;
  double ucl;
  std::vector<int> signals;  // subgroups with statistic strictly above ucl
  ProcessParams params_used;
  LimitCoefficients coefficients_used;
};

enum class LimitSource { Table, MonteCarlo };

struct Phase1Options {
  EstimationConfig estimation;
  LimitSource limit_source = LimitSource::Table;
  int max_rounds = 10;
  // Monte Carlo limit derivation, used when limit_source == MonteCarlo.
  double alpha = 0.0027;
  std::int64_t replicates = 1000000;
  std::uint64_t seed = 0;
};

struct Phase1Result {
  ProcessParams final_params;
  double w_c;
  double p_c;
  ChartReport xbar_report;
  ChartReport s_report;
  std::vector<int> excluded_subgroups;  // original row indices, ascending
  int rounds;
  bool max_rounds_reached;
  int n;
  CensoringScheme scheme;
  std::vector<std::string> warnings;
};

/// Per-subgroup (mean, sample std deviation with divisor n-1) after replacing
/// censored cells by the CEV weight computed from `params`.
std::vector<std::pair<double, double>> subgroup_statistics(const SubgroupMatrix& matrix,
                                                           const ProcessParams& params);

/// Initial-implementation workflow: estimate, substitute, derive limits, chart
/// both statistics, exclude every signalling subgroup and repeat, up to
/// max_rounds. No lower limits anywhere.
Phase1Result run_phase1(const SubgroupMatrix& matrix, const Phase1Options& options = {});

Phase1Result run_phase1(const SubgroupMatrix& matrix, const EstimationConfig& estimation,
                        LimitSource limit_source, int max_rounds);

struct MonitorResult {
  std::vector<int> xbar_signals;
  std::vector<int> s_signals;
};

/// Phase II: apply the baseline weight and limits to fresh subgroups without
/// re-estimating anything.
MonitorResult monitor(const SubgroupMatrix& subgroups, const Phase1Result& baseline);

}  // namespace cev
