#include "cev/chart.hpp"

#include <algorithm>
#include <cmath>

namespace cev {

SubgroupMatrix::SubgroupMatrix(int k, int n, std::vector<double> data, CensoringScheme scheme)
    : k_(k), n_(n), data_(std::move(data)), scheme_(scheme) {
  if (k_ < 1) fail(errc::domain, "matrix needs at least one subgroup");
  if (n_ < 2) fail(errc::domain, "subgroup size must be >= 2");
  if (data_.size() != static_cast<std::size_t>(k_) * static_cast<std::size_t>(n_))
    fail(errc::domain, "matrix data size does not match k x n");
  for (double& cell : data_) {
    if (!std::isfinite(cell)) fail(errc::domain, "matrix cells must be finite");
    if (cell < scheme_.limit_c) cell = scheme_.limit_c;  // censored cells live at the limit
  }
}

int SubgroupMatrix::censored_count() const {
  int c = 0;
  for (double cell : data_)
    if (cell <= scheme_.limit_c) ++c;
  return c;
}

CensoredSample SubgroupMatrix::flatten() const {
  std::vector<bool> flags(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) flags[i] = data_[i] <= scheme_.limit_c;
  return CensoredSample(data_, std::move(flags), scheme_);
}

SubgroupMatrix SubgroupMatrix::without_rows(const std::vector<int>& drop) const {
  std::vector<double> kept;
  kept.reserve(data_.size());
  int kept_rows = 0;
  for (int i = 0; i < k_; ++i) {
    if (std::find(drop.begin(), drop.end(), i) != drop.end()) continue;
    kept.insert(kept.end(), data_.begin() + static_cast<std::ptrdiff_t>(i) * n_,
                data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * n_);
    ++kept_rows;
  }
  if (kept_rows == 0) fail(errc::degenerate, "every subgroup was excluded");
  return SubgroupMatrix(kept_rows, n_, std::move(kept), scheme_);
}

std::vector<std::pair<double, double>> subgroup_statistics(const SubgroupMatrix& matrix,
                                                           const ProcessParams& params) {
  const double wc = cev_weight(params, matrix.scheme());
  const int n = matrix.n();
  std::vector<std::pair<double, double>> stats;
  stats.reserve(static_cast<std::size_t>(matrix.k()));
  for (int i = 0; i < matrix.k(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += matrix.censored(i, j) ? wc : matrix.at(i, j);
    const double mean = sum / n;
    double ss = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = matrix.censored(i, j) ? wc : matrix.at(i, j);
      ss += (v - mean) * (v - mean);
    }
    stats.emplace_back(mean, std::sqrt(ss / (n - 1)));
  }
  return stats;
}

namespace {

ChartReport build_report(ChartKind kind, const std::vector<int>& row_index,
                         const std::vector<std::pair<double, double>>& stats, double ucl,
                         const ProcessParams& params, const LimitCoefficients& coeffs) {
  ChartReport report{kind, {}, ucl, {}, params, coeffs};
  report.points.reserve(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const double value = kind == ChartKind::CevXbar ? stats[i].first : stats[i].second;
    report.points.push_back({row_index[i], value});
    if (value > ucl) report.signals.push_back(row_index[i]);
  }
  return report;
}

}  // namespace

Phase1Result run_phase1(const SubgroupMatrix& matrix, const Phase1Options& options) {
  if (options.max_rounds < 1) fail(errc::config, "max_rounds must be >= 1");

  std::vector<int> active(static_cast<std::size_t>(matrix.k()));
  for (int i = 0; i < matrix.k(); ++i) active[static_cast<std::size_t>(i)] = i;
  std::vector<int> excluded;

  SubgroupMatrix current = matrix;
  std::vector<std::string> warnings;
  if (matrix.k() * matrix.n() < 100)
    warnings.push_back("fewer than 100 observations; initial estimates may be inaccurate");

  int rounds = 0;
  while (true) {
    ++rounds;
    const EstimationResult est = estimate(current.flatten(), options.estimation);

    LimitCoefficients coeffs =
        options.limit_source == LimitSource::Table
            ? table_coefficients(current.n(), est.p_c)
            : simulate_coefficients({options.alpha, options.replicates, options.seed, current.n(),
                                     est.p_c});
    const auto [ucl_xbar, ucl_s] = absolute_limits(est.params, coeffs);
    const auto stats = subgroup_statistics(current, est.params);

    ChartReport xbar = build_report(ChartKind::CevXbar, active, stats, ucl_xbar, est.params, coeffs);
    ChartReport s = build_report(ChartKind::CevS, active, stats, ucl_s, est.params, coeffs);

    // A subgroup signalling on either chart is excluded.
    std::vector<int> signalled = xbar.signals;
    for (int idx : s.signals)
      if (std::find(signalled.begin(), signalled.end(), idx) == signalled.end())
        signalled.push_back(idx);
    std::sort(signalled.begin(), signalled.end());

    const bool done = signalled.empty() || rounds >= options.max_rounds;
    if (done) {
      Phase1Result result{est.params,
                          est.w_c,
                          est.p_c,
                          std::move(xbar),
                          std::move(s),
                          std::move(excluded),
                          rounds,
                          !signalled.empty(),
                          matrix.n(),
                          matrix.scheme(),
                          std::move(warnings)};
      std::sort(result.excluded_subgroups.begin(), result.excluded_subgroups.end());
      return result;
    }

    // Map original indices back to positions within the current matrix.
    std::vector<int> drop_positions;
    std::vector<int> next_active;
    for (std::size_t pos = 0; pos < active.size(); ++pos) {
      if (std::find(signalled.begin(), signalled.end(), active[pos]) != signalled.end())
        drop_positions.push_back(static_cast<int>(pos));
      else
        next_active.push_back(active[pos]);
    }
    excluded.insert(excluded.end(), signalled.begin(), signalled.end());
    current = current.without_rows(drop_positions);
    active = std::move(next_active);
  }
}

Phase1Result run_phase1(const SubgroupMatrix& matrix, const EstimationConfig& estimation,
                        LimitSource limit_source, int max_rounds) {
  Phase1Options options;
  options.estimation = estimation;
  options.limit_source = limit_source;
  options.max_rounds = max_rounds;
  return run_phase1(matrix, options);
}

MonitorResult monitor(const SubgroupMatrix& subgroups, const Phase1Result& baseline) {
  if (subgroups.n() != baseline.n)
    fail(errc::config, "subgroup size does not match the baseline");

  const double wc = baseline.w_c;
  const int n = subgroups.n();
  MonitorResult result;
  for (int i = 0; i < subgroups.k(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += subgroups.censored(i, j) ? wc : subgroups.at(i, j);
    const double mean = sum / n;
    double ss = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = subgroups.censored(i, j) ? wc : subgroups.at(i, j);
      ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / (n - 1));
    if (mean > baseline.xbar_report.ucl) result.xbar_signals.push_back(i);
    if (sd > baseline.s_report.ucl) result.s_signals.push_back(i);
  }
  return result;
}

}  // namespace cev
