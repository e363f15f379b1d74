#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "cev/chart.hpp"
#include "cev/datagen.hpp"
#include "cev/render.hpp"
#include "doctest.h"

using namespace cev;

namespace {

SubgroupMatrix section31_matrix(std::uint64_t seed) {
  return generate({49.0279, 0.9915, 50.0, 100, 5, seed});
}

}  // namespace

TEST_CASE("matrix construction and flattening") {
  const SubgroupMatrix m(2, 3, {50.0, 50.5, 51.0, 49.0, 50.0, 52.0}, CensoringScheme(50.0));
  CHECK(m.k() == 2);
  CHECK(m.n() == 3);
  CHECK(m.at(1, 0) == 50.0);  // 49.0 normalized up to the limit
  CHECK(m.censored(0, 0));
  CHECK(!m.censored(0, 1));
  CHECK(m.censored_count() == 3);

  const CensoredSample s = m.flatten();
  CHECK(s.size() == 6);
  CHECK(s.uncensored_count() == 3);

  CHECK_THROWS_AS(SubgroupMatrix(0, 3, {}, CensoringScheme(0.0)), Error);
  CHECK_THROWS_AS(SubgroupMatrix(1, 1, {1.0}, CensoringScheme(0.0)), Error);
  CHECK_THROWS_AS(SubgroupMatrix(2, 2, {1.0, 2.0, 3.0}, CensoringScheme(0.0)), Error);
}

TEST_CASE("subgroup statistics substitute the weight and use divisor n-1") {
  const ProcessParams params(49.0279, 0.9915);
  const CensoringScheme scheme(50.0);
  const double wc = cev_weight(params, scheme);

  SUBCASE("all-censored row plots (wc, 0)") {
    const SubgroupMatrix m(1, 5, std::vector<double>(5, 50.0), scheme);
    const auto stats = subgroup_statistics(m, params);
    CHECK(stats[0].first == doctest::Approx(wc).epsilon(1e-15));
    CHECK(stats[0].second == 0.0);
  }

  SUBCASE("published row 8 , recomputed through the weight") {
    const SubgroupMatrix m(1, 5, {50.6, 50.0, 50.0, 50.0, 51.2}, scheme);
    const auto stats = subgroup_statistics(m, params);
    const double mean_expect = (50.6 + 3.0 * wc + 51.2) / 5.0;
    CHECK(stats[0].first == doctest::Approx(mean_expect).epsilon(1e-14));
    CHECK(stats[0].first == doctest::Approx(49.601302651712042).epsilon(1e-12));
    CHECK(stats[0].second == doctest::Approx(1.2043721747761961).epsilon(1e-12));
  }

  SUBCASE("uncensored row reduces to the ordinary statistics") {
    const SubgroupMatrix m(1, 5, {50.5, 50.9, 50.8, 50.6, 51.2}, scheme);
    const auto stats = subgroup_statistics(m, params);
    const double mean = (50.5 + 50.9 + 50.8 + 50.6 + 51.2) / 5.0;
    double ss = 0.0;
    for (double v : {50.5, 50.9, 50.8, 50.6, 51.2}) ss += (v - mean) * (v - mean);
    CHECK(stats[0].first == doctest::Approx(mean).epsilon(1e-14));
    CHECK(stats[0].second == doctest::Approx(std::sqrt(ss / 4.0)).epsilon(1e-14));
  }
}

TEST_CASE("phase1 on regenerated in-control data holds the published limits") {
  const SubgroupMatrix m = section31_matrix(1);
  const Phase1Result r = run_phase1(m, EstimationConfig{}, LimitSource::Table, 10);

  CHECK(std::abs(r.final_params.mu - 49.0279) <= 0.3);
  CHECK(std::abs(r.final_params.sigma - 0.9915) <= 0.3);
  CHECK(std::abs(r.xbar_report.ucl - 50.436) <= 0.5);
  CHECK(std::abs(r.s_report.ucl - 2.07) <= 0.5);
  CHECK(r.w_c < 50.0);
  CHECK(r.p_c > 0.5);
  CHECK(r.p_c < 1.0);
  CHECK(r.rounds >= 1);
  CHECK(r.n == 5);
  CHECK(r.xbar_report.points.size() + r.excluded_subgroups.size() == 100);
  // this seed regenerates an in-control dataset: nothing signals, nothing
  // gets excluded
  CHECK(r.rounds == 1);
  CHECK(r.excluded_subgroups.empty());
  CHECK(r.xbar_report.signals.empty());
  CHECK(r.s_report.signals.empty());

  // signal sets match a brute re-scan of the final reports
  for (const ChartReport* rep : {&r.xbar_report, &r.s_report}) {
    std::vector<int> rescanned;
    for (const auto& p : rep->points)
      if (p.statistic > rep->ucl) rescanned.push_back(p.subgroup);
    CHECK(rep->signals == rescanned);
  }
  // in the final round nothing signals (or the round cap was hit)
  if (!r.max_rounds_reached) {
    CHECK(r.xbar_report.signals.empty());
    CHECK(r.s_report.signals.empty());
  }
}

TEST_CASE("phase1 is idempotent on clean data") {
  const SubgroupMatrix m = section31_matrix(20);
  const Phase1Result a = run_phase1(m, EstimationConfig{}, LimitSource::Table, 10);
  if (a.excluded_subgroups.empty()) {
    const Phase1Result b = run_phase1(m, EstimationConfig{}, LimitSource::Table, 10);
    CHECK(std::abs(a.final_params.mu - b.final_params.mu) <= 1e-12);
    CHECK(std::abs(a.final_params.sigma - b.final_params.sigma) <= 1e-12);
  }
}

TEST_CASE("phase1 excludes an injected out-of-control subgroup") {
  const SubgroupMatrix base = section31_matrix(2);
  std::vector<double> data = base.data();
  // shift one subgroup up by ~5 sigma so its CEV mean crosses the UCL
  for (int j = 0; j < 5; ++j) data[static_cast<std::size_t>(40) * 5 + j] = 49.0279 + 5.0 * 0.9915;
  const SubgroupMatrix shifted(100, 5, std::move(data), base.scheme());

  const Phase1Result r = run_phase1(shifted, EstimationConfig{}, LimitSource::Table, 10);
  CHECK(std::find(r.excluded_subgroups.begin(), r.excluded_subgroups.end(), 40) !=
        r.excluded_subgroups.end());
  CHECK(r.rounds >= 2);
  // the excluded subgroup keeps its original index out of the final report
  for (const auto& p : r.xbar_report.points) CHECK(p.subgroup != 40);
}

TEST_CASE("phase1 propagates estimator errors") {
  const SubgroupMatrix all_censored(2, 5, std::vector<double>(10, 50.0), CensoringScheme(50.0));
  CHECK_THROWS_AS(run_phase1(all_censored, EstimationConfig{}, LimitSource::Table, 10), Error);
}

TEST_CASE("phase1 warns below 100 observations") {
  const SubgroupMatrix small = generate({49.0279, 0.9915, 50.0, 10, 5, 6});
  const Phase1Result r = run_phase1(small, EstimationConfig{}, LimitSource::Table, 10);
  CHECK(!r.warnings.empty());
  const SubgroupMatrix big = generate({49.0279, 0.9915, 50.0, 100, 5, 6});
  CHECK(run_phase1(big, EstimationConfig{}, LimitSource::Table, 10).warnings.empty());
}

TEST_CASE("uncensored in-control matrix reduces to an ordinary one-sided chart") {
  const SubgroupMatrix m = generate({10.0, 1.0, -100.0, 40, 5, 3});
  CHECK(m.censored_count() == 0);
  const Phase1Result r = run_phase1(m, EstimationConfig{}, LimitSource::Table, 10);
  CHECK(r.p_c < 1e-15);
  const auto stats = subgroup_statistics(m, r.final_params);
  const auto plain = [&](int i) {
    double sum = 0.0;
    for (int j = 0; j < 5; ++j) sum += m.at(i, j);
    return sum / 5.0;
  };
  for (int i = 0; i < m.k(); ++i) CHECK(stats[static_cast<std::size_t>(i)].first ==
                                        doctest::Approx(plain(i)).epsilon(1e-14));
}

TEST_CASE("monitor applies baseline limits without re-estimation") {
  const SubgroupMatrix m = section31_matrix(4);
  const Phase1Result baseline = run_phase1(m, EstimationConfig{}, LimitSource::Table, 10);

  SUBCASE("an all-censored subgroup plots (wc, 0) and never signals") {
    const SubgroupMatrix quiet(1, 5, std::vector<double>(5, 50.0), m.scheme());
    const MonitorResult r = monitor(quiet, baseline);
    CHECK(r.xbar_signals.empty());
    CHECK(r.s_signals.empty());
  }

  SUBCASE("a subgroup at mu + 3 sigma signals on the mean chart") {
    const double hot = baseline.final_params.mu + 3.0 * baseline.final_params.sigma;
    const SubgroupMatrix spike(1, 5, std::vector<double>(5, hot), m.scheme());
    const MonitorResult r = monitor(spike, baseline);
    CHECK(r.xbar_signals == std::vector<int>{0});
  }

  SUBCASE("subgroup size mismatch is a configuration error") {
    const SubgroupMatrix wrong(1, 4, std::vector<double>(4, 50.0), m.scheme());
    CHECK_THROWS_AS(monitor(wrong, baseline), Error);
  }
}

TEST_CASE("render: SVG marker counts and highlighting") {
  const LimitCoefficients coeffs{1.42, 2.09, Provenance::PaperTable, 5, 0.8, std::nullopt, false,
                                 {}};
  ChartReport report{ChartKind::CevXbar, {}, 10.0, {}, ProcessParams(9.0, 0.5), coeffs};
  for (int i = 0; i < 25; ++i) report.points.push_back({i, 9.0 + 0.02 * i});

  auto count = [](const std::string& doc, const std::string& needle) {
    std::size_t hits = 0, pos = 0;
    while ((pos = doc.find(needle, pos)) != std::string::npos) {
      ++hits;
      pos += needle.size();
    }
    return hits;
  };

  SUBCASE("no signals: 25 plain markers, zero highlights") {
    const std::string svg = render_chart(report, ChartFormat::Svg);
    CHECK(count(svg, "class=\"point\"") == 25);
    CHECK(count(svg, "class=\"signal\"") == 0);
    CHECK(svg.find("UCL = 10") != std::string::npos);
    CHECK(svg.find("subgroup") != std::string::npos);
    CHECK(svg.find("<svg xmlns") == 0);
  }

  SUBCASE("one signal is highlighted exactly once") {
    report.points[7].statistic = 10.5;
    report.signals.push_back(7);
    const std::string svg = render_chart(report, ChartFormat::Svg);
    CHECK(count(svg, "class=\"point\"") == 24);
    CHECK(count(svg, "class=\"signal\"") == 1);
  }

  SUBCASE("units land in the axis label") {
    const std::string svg = render_chart(report, ChartFormat::Svg, {"ml/h"});
    CHECK(svg.find("subgroup mean [ml/h]") != std::string::npos);
  }

  SUBCASE("CSV has a header plus one row per subgroup") {
    const std::string csv = render_chart(report, ChartFormat::Csv);
    CHECK(count(csv, "\n") == 26);
    CHECK(csv.rfind("subgroup,statistic,ucl,signal\n", 0) == 0);
  }

  SUBCASE("JSON rows carry the signal flag") {
    report.points[3].statistic = 11.0;
    report.signals.push_back(3);
    const std::string json = render_chart(report, ChartFormat::Json);
    CHECK(count(json, "\"signal\": true") == 1);
    CHECK(count(json, "\"signal\": false") == 24);
  }

  SUBCASE("rendering is deterministic") {
    CHECK(render_chart(report, ChartFormat::Svg) == render_chart(report, ChartFormat::Svg));
  }
}

TEST_CASE("phase2 signal rate sits near alpha for an in-control stream") {
  // moderate scale keeps this test quick; the acceptance suite runs the
  // full-size calibration
  SimulationConfig cfg;
  cfg.replicates = 200000;
  cfg.seed = 31;
  cfg.n = 5;
  cfg.p_c = 0.8413447460685429;  // C = 1 under N(0,1)
  const LimitCoefficients coeffs = simulate_coefficients(cfg);

  Phase1Result baseline{ProcessParams(0.0, 1.0),
                        cev_weight(ProcessParams(0.0, 1.0), CensoringScheme(1.0)),
                        cfg.p_c,
                        ChartReport{ChartKind::CevXbar, {}, 0.0, {}, ProcessParams(0.0, 1.0),
                                    coeffs},
                        ChartReport{ChartKind::CevS, {}, 0.0, {}, ProcessParams(0.0, 1.0),
                                    coeffs},
                        {},
                        1,
                        false,
                        5,
                        CensoringScheme(1.0),
                        {}};
  const auto [ucl_xbar, ucl_s] = absolute_limits(baseline.final_params, coeffs);
  baseline.xbar_report.ucl = ucl_xbar;
  baseline.s_report.ucl = ucl_s;

  const SubgroupMatrix stream = generate({0.0, 1.0, 1.0, 20000, 5, 77});
  const MonitorResult r = monitor(stream, baseline);
  const double k = 20000.0;
  const double se = std::sqrt(0.0027 * 0.9973 / k);
  CHECK(std::abs(static_cast<double>(r.xbar_signals.size()) / k - 0.0027) <= 4.0 * se);
  CHECK(std::abs(static_cast<double>(r.s_signals.size()) / k - 0.0027) <= 4.0 * se);
}
