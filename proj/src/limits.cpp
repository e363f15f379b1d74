#include "cev/limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "cev/csv.hpp"
#include "cev/rng.hpp"

namespace cev {

namespace {

// Published coefficient rows, transcribed verbatim (decimal comma -> point).
constexpr double kTableData[][4] = {
    // n = 3
    {3, 0.02, 2.46, 3.23}, {3, 0.03, 2.11, 2.78}, {3, 0.04, 1.94, 2.54},
    {3, 0.07, 1.92, 2.53}, {3, 0.10, 1.94, 2.55}, {3, 0.16, 1.95, 2.56},
    {3, 0.24, 1.95, 2.56}, {3, 0.31, 1.95, 2.56}, {3, 0.50, 1.95, 2.56},
    {3, 0.69, 1.95, 2.56}, {3, 0.84, 1.95, 2.57}, {3, 0.98, 1.95, 2.56},
    // n = 5
    {5, 0.02, 1.61, 2.36}, {5, 0.03, 1.47, 2.15}, {5, 0.04, 1.42, 2.09},
    {5, 0.07, 1.42, 2.08}, {5, 0.10, 1.42, 2.07}, {5, 0.16, 1.42, 2.09},
    {5, 0.24, 1.43, 2.09}, {5, 0.31, 1.42, 2.09}, {5, 0.50, 1.43, 2.09},
    {5, 0.69, 1.42, 2.09}, {5, 0.84, 1.43, 2.09}, {5, 0.98, 1.42, 2.08},
    // n = 10
    {10, 0.02, 1.02, 1.80}, {10, 0.03, 0.97, 1.71}, {10, 0.04, 0.97, 1.71},
    {10, 0.07, 0.97, 1.71}, {10, 0.10, 0.97, 1.71}, {10, 0.16, 0.98, 1.72},
    {10, 0.24, 0.97, 1.72}, {10, 0.31, 0.97, 1.72}, {10, 0.50, 0.97, 1.71},
    {10, 0.69, 0.97, 1.72}, {10, 0.84, 0.97, 1.71}, {10, 0.98, 0.97, 1.71},
    // n = 20
    {20, 0.02, 0.69, 1.50}, {20, 0.03, 0.68, 1.49}, {20, 0.04, 0.68, 1.49},
    {20, 0.07, 0.68, 1.49}, {20, 0.10, 0.68, 1.49}, {20, 0.16, 0.68, 1.49},
    {20, 0.24, 0.68, 1.49}, {20, 0.31, 0.68, 1.49}, {20, 0.50, 0.68, 1.49},
    {20, 0.69, 0.68, 1.49}, {20, 0.84, 0.68, 1.49}, {20, 0.98, 0.68, 1.49},
};

constexpr double kKeyEps = 1e-12;

struct CurvePoint {
  double ucl_xbar;
  double ucl_s;
  bool clamped;
};

// Piecewise-linear in log10(1 - Pc) along one subgroup-size curve.
CurvePoint interpolate_curve(const std::vector<const CoefficientRow*>& curve, double one_minus) {
  const CoefficientRow* lo = curve.front();
  const CoefficientRow* hi = curve.back();
  if (one_minus <= lo->one_minus_pc + kKeyEps) {
    return {lo->ucl_xbar, lo->ucl_s, one_minus < lo->one_minus_pc - kKeyEps};
  }
  if (one_minus >= hi->one_minus_pc - kKeyEps) {
    return {hi->ucl_xbar, hi->ucl_s, one_minus > hi->one_minus_pc + kKeyEps};
  }
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (std::abs(curve[i]->one_minus_pc - one_minus) <= kKeyEps)
      return {curve[i]->ucl_xbar, curve[i]->ucl_s, false};
  }
  std::size_t j = 1;
  while (curve[j]->one_minus_pc < one_minus) ++j;
  const CoefficientRow* a = curve[j - 1];
  const CoefficientRow* b = curve[j];
  const double x = std::log10(one_minus);
  const double xa = std::log10(a->one_minus_pc);
  const double xb = std::log10(b->one_minus_pc);
  const double t = (x - xa) / (xb - xa);
  return {a->ucl_xbar + t * (b->ucl_xbar - a->ucl_xbar), a->ucl_s + t * (b->ucl_s - a->ucl_s),
          false};
}

}  // namespace

void SimulationConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 0.5)) fail(errc::domain, "alpha must lie in (0, 0.5)");
  if (replicates < 1000) fail(errc::domain, "at least 1000 replicates are required");
  if (n < 2) fail(errc::domain, "subgroup size must be >= 2");
  if (!(p_c >= 0.0 && p_c < 1.0)) fail(errc::domain, "censoring proportion must lie in [0, 1)");
}

CoefficientTable::CoefficientTable(std::vector<CoefficientRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) fail(errc::domain, "coefficient table must not be empty");
  for (const auto& r : rows_) {
    if (r.n < 2 || !(r.one_minus_pc > 0.0 && r.one_minus_pc <= 1.0) || r.ucl_xbar <= 0.0 ||
        r.ucl_s <= 0.0)
      fail(errc::domain, "coefficient table row out of range");
  }
  std::sort(rows_.begin(), rows_.end(), [](const CoefficientRow& a, const CoefficientRow& b) {
    return a.n != b.n ? a.n < b.n : a.one_minus_pc < b.one_minus_pc;
  });
}

const CoefficientTable& CoefficientTable::builtin() {
  static const CoefficientTable table = [] {
    std::vector<CoefficientRow> rows;
    for (const auto& r : kTableData)
      rows.push_back({static_cast<int>(r[0]), r[1], r[2], r[3]});
    return CoefficientTable(std::move(rows));
  }();
  return table;
}

std::vector<int> CoefficientTable::subgroup_sizes() const {
  std::vector<int> sizes;
  for (const auto& r : rows_)
    if (sizes.empty() || sizes.back() != r.n) sizes.push_back(r.n);
  return sizes;
}

std::string CoefficientTable::to_csv() const {
  std::string out = "n,one_minus_pc,ucl_xbar,ucl_s\n";
  for (const auto& r : rows_) {
    out += std::to_string(r.n);
    out += ',';
    out += format_double(r.one_minus_pc);
    out += ',';
    out += format_double(r.ucl_xbar);
    out += ',';
    out += format_double(r.ucl_s);
    out += '\n';
  }
  return out;
}

LimitCoefficients simulate_coefficients(const SimulationConfig& config, int threads) {
  config.validate();
  const std::int64_t reps = config.replicates;
  const int n = config.n;
  const bool censoring = config.p_c > 0.0;
  const double cstar = censoring ? std_normal_quantile(config.p_c) : 0.0;
  const double wstar = censoring ? -detail::mills(cstar) : 0.0;
  const CounterRng rng(config.seed);

  std::vector<double> means(static_cast<std::size_t>(reps));
  std::vector<double> sds(static_cast<std::size_t>(reps));

  auto worker = [&](std::int64_t begin, std::int64_t end) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (std::int64_t rep = begin; rep < end; ++rep) {
      const std::uint64_t base = static_cast<std::uint64_t>(rep) * static_cast<std::uint64_t>(n);
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        double z = rng.normal(base + static_cast<std::uint64_t>(j));
        if (censoring && z <= cstar) z = wstar;
        row[static_cast<std::size_t>(j)] = z;
        sum += z;
      }
      const double m = sum / n;
      double ss = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = row[static_cast<std::size_t>(j)] - m;
        ss += d * d;
      }
      means[static_cast<std::size_t>(rep)] = m;
      sds[static_cast<std::size_t>(rep)] = std::sqrt(ss / (n - 1));
    }
  };

  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  nthreads = static_cast<int>(std::min<std::int64_t>(nthreads, reps));
  if (nthreads == 1) {
    worker(0, reps);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    const std::int64_t chunk = (reps + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const std::int64_t b = t * chunk;
      const std::int64_t e = std::min<std::int64_t>(b + chunk, reps);
      if (b >= e) break;
      pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // Order statistic at ceil((1 - alpha) * replicates), 1-based.
  const long double pos = std::ceil((1.0L - static_cast<long double>(config.alpha)) *
                                    static_cast<long double>(reps));
  std::int64_t k = static_cast<std::int64_t>(pos);
  k = std::clamp<std::int64_t>(k, 1, reps);
  const auto nth = static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(means.begin(), means.begin() + nth, means.end());
  std::nth_element(sds.begin(), sds.begin() + nth, sds.end());

  LimitCoefficients out{means[static_cast<std::size_t>(nth)],
                        sds[static_cast<std::size_t>(nth)],
                        Provenance::MonteCarlo,
                        n,
                        config.p_c,
                        config,
                        false,
                        {}};
  if (1e6 * n * (1.0 - config.p_c) < 100.0)
    out.warnings.push_back(
        "censoring so heavy that fewer than 100 uncensored draws are expected per 10^6 "
        "replicates; the quantile is unreliable");
  if (out.ucl_xbar <= 0.0)
    out.warnings.push_back(
        "non-positive mean coefficient: the (1 - alpha) quantile falls inside the "
        "censored-dominated region");
  return out;
}

LimitCoefficients table_coefficients(int n, double p_c, const CoefficientTable& table) {
  if (n < 2) fail(errc::domain, "subgroup size must be >= 2");
  if (!(p_c >= 0.0 && p_c < 1.0)) fail(errc::domain, "censoring proportion must lie in [0, 1)");
  const double one_minus = 1.0 - p_c;

  const std::vector<int> sizes = table.subgroup_sizes();
  auto curve_for = [&](int size) {
    std::vector<const CoefficientRow*> curve;
    for (const auto& r : table.rows())
      if (r.n == size) curve.push_back(&r);
    return curve;
  };

  LimitCoefficients out{0.0, 0.0, Provenance::PaperTable, n, p_c, std::nullopt, false, {}};

  if (n <= sizes.front() || n >= sizes.back() ||
      std::find(sizes.begin(), sizes.end(), n) != sizes.end()) {
    int use = n;
    if (n < sizes.front()) {
      use = sizes.front();
      out.clamped = true;
    } else if (n > sizes.back()) {
      use = sizes.back();
      out.clamped = true;
    }
    const CurvePoint p = interpolate_curve(curve_for(use), one_minus);
    out.ucl_xbar = p.ucl_xbar;
    out.ucl_s = p.ucl_s;
    out.clamped = out.clamped || p.clamped;
    return out;
  }

  // n strictly between two tabulated sizes: linear in 1/sqrt(n).
  std::size_t j = 1;
  while (sizes[j] < n) ++j;
  const int n_lo = sizes[j - 1];
  const int n_hi = sizes[j];
  const CurvePoint a = interpolate_curve(curve_for(n_lo), one_minus);
  const CurvePoint b = interpolate_curve(curve_for(n_hi), one_minus);
  const double ua = 1.0 / std::sqrt(static_cast<double>(n_lo));
  const double ub = 1.0 / std::sqrt(static_cast<double>(n_hi));
  const double u = 1.0 / std::sqrt(static_cast<double>(n));
  const double t = (u - ua) / (ub - ua);
  out.ucl_xbar = a.ucl_xbar + t * (b.ucl_xbar - a.ucl_xbar);
  out.ucl_s = a.ucl_s + t * (b.ucl_s - a.ucl_s);
  out.clamped = a.clamped || b.clamped;
  return out;
}

LimitCoefficients classical_coefficients(int n, double p_c) {
  const ChartConstants c = classical_constants(n);
  return {c.a3, c.b4, Provenance::ClassicalConstant, n, p_c, std::nullopt, false, {}};
}

std::pair<double, double> absolute_limits(const ProcessParams& params,
                                          const LimitCoefficients& coeffs) {
  return {coeffs.ucl_xbar * params.sigma + params.mu, coeffs.ucl_s * params.sigma};
}

TableComparisonReport reproduce_paper_tables(double alpha, std::int64_t replicates,
                                             std::uint64_t seed) {
  TableComparisonReport report{alpha, replicates, seed, {}};
  const auto& rows = CoefficientTable::builtin().rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CoefficientRow& row = rows[i];
    SimulationConfig cfg;
    cfg.alpha = alpha;
    cfg.replicates = replicates;
    cfg.seed = CounterRng::derive(seed, i);
    cfg.n = row.n;
    cfg.p_c = 1.0 - row.one_minus_pc;
    const LimitCoefficients mc = simulate_coefficients(cfg);
    const ChartConstants cc = classical_constants(row.n);
    report.rows.push_back({row.n, row.one_minus_pc, row.ucl_xbar, row.ucl_s, mc.ucl_xbar, mc.ucl_s,
                           cc.a3, cc.b4});
  }
  return report;
}

}  // namespace cev
