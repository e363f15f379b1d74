#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>

#include "cev/csv.hpp"
#include "cev/datagen.hpp"
#include "cev/json_io.hpp"
#include "cev/rng.hpp"
#include "doctest.h"

using namespace cev;

#ifndef TESTDATA_DIR
#define TESTDATA_DIR "tests/data"
#endif

TEST_CASE("format_double round-trips exactly") {
  const CounterRng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double v = (rng.uniform_open(static_cast<std::uint64_t>(i)) - 0.5) *
                     std::pow(10.0, (i % 13) - 6);
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(50.0) == "50");
  CHECK(format_double(0.16) == "0.16");
}

TEST_CASE("datagen: determinism, censoring convention and seeds") {
  const GenSpec spec{0.0, 1.0, -1.0, 10, 5, 42};
  const SubgroupMatrix a = generate(spec);
  const SubgroupMatrix b = generate(spec);
  CHECK(a.data() == b.data());

  GenSpec other = spec;
  other.seed = 43;
  CHECK(generate(other).data() != a.data());

  for (int i = 0; i < a.k(); ++i)
    for (int j = 0; j < a.n(); ++j) CHECK(a.at(i, j) >= -1.0);
}

TEST_CASE("datagen: extreme limits") {
  // C ten sigma below the mean: no censoring, mean near mu
  const SubgroupMatrix low = generate({0.0, 1.0, -10.0, 10, 5, 1});
  CHECK(low.censored_count() == 0);
  double sum = 0.0;
  for (double v : low.data()) sum += v;
  CHECK(std::abs(sum / 50.0) <= 0.5);

  // C ten sigma above: everything censored at the limit
  const SubgroupMatrix high = generate({0.0, 1.0, 10.0, 10, 5, 1});
  CHECK(high.censored_count() == 50);
  for (double v : high.data()) CHECK(v == 10.0);
}

TEST_CASE("datagen: censored fraction converges to Phi((C-mu)/sigma)") {
  const SubgroupMatrix m = generate({0.0, 1.0, 1.0, 20000, 5, 9});  // 1e5 cells
  const double frac = static_cast<double>(m.censored_count()) / 1e5;
  CHECK(std::abs(frac - 0.8413) <= 0.004);  // three binomial standard errors
}

TEST_CASE("csv: the published 25-row grid") {
  const SubgroupMatrix m = ingest_csv(std::string(TESTDATA_DIR) + "/table1.csv", 50.0, 5);
  CHECK(m.k() == 25);
  CHECK(m.n() == 5);
  // 106 of the 125 printed cells read "50,0"
  CHECK(m.censored_count() == 106);
  CHECK(m.at(7, 4) == 51.2);
  CHECK(m.censored(7, 1));
}

TEST_CASE("csv: header detection, token '<', and normalization") {
  const std::string text =
      "a,b,c\n"
      "1.5,<,0.25\n"
      "2.0,3.5,4.0\n";
  const SubgroupMatrix m = parse_csv(text, 1.0, 3);
  CHECK(m.k() == 2);
  CHECK(m.at(0, 1) == 1.0);  // '<' lands at the threshold
  CHECK(m.censored(0, 1));
  CHECK(m.at(0, 2) == 1.0);  // 0.25 <= threshold normalizes up
  CHECK(m.censored(0, 2));
  CHECK(m.at(0, 0) == 1.5);
  CHECK(!m.censored(0, 0));
}

TEST_CASE("csv: all cells at the threshold are censored") {
  const SubgroupMatrix m = parse_csv("50.0,50.0,50.0,50.0,50.0\n", 50.0, 5);
  CHECK(m.censored_count() == 5);
}

TEST_CASE("csv: error locations") {
  CHECK_THROWS_WITH_AS(parse_csv("1.5,2.5,3.5\n4.5,5.5\n", 1.0, 3),
                       doctest::Contains("row 2"), Error);
  // a malformed first row reads as a header; later rows report the location
  CHECK_THROWS_WITH_AS(parse_csv("1.5,2.5,3.5\n1.5,2.5,oops\n", 1.0, 3),
                       doctest::Contains("column 3"), Error);
  CHECK_THROWS_AS(parse_csv("", 1.0, 3), Error);
  CHECK_THROWS_AS(parse_csv("header,only,row\n", 1.0, 3), Error);
}

TEST_CASE("csv: emit then ingest reproduces the matrix exactly") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const SubgroupMatrix m = generate({5.0, 2.0, 4.0, 30, 4, seed});
    const SubgroupMatrix back = parse_csv(matrix_to_csv(m), 4.0, 4);
    CHECK(back.k() == m.k());
    CHECK(back.data() == m.data());
  }
}

TEST_CASE("phase1 JSON round trip preserves the baseline") {
  const SubgroupMatrix m = generate({49.0279, 0.9915, 50.0, 40, 5, 8});
  const Phase1Result r = run_phase1(m, EstimationConfig{}, LimitSource::Table, 10);
  const std::string text = phase1_to_json(r);
  const Phase1Result back = phase1_from_json(text);

  CHECK(back.final_params.mu == r.final_params.mu);
  CHECK(back.final_params.sigma == r.final_params.sigma);
  CHECK(back.w_c == r.w_c);
  CHECK(back.p_c == r.p_c);
  CHECK(back.n == r.n);
  CHECK(back.scheme.limit_c == r.scheme.limit_c);
  CHECK(back.xbar_report.ucl == r.xbar_report.ucl);
  CHECK(back.s_report.ucl == r.s_report.ucl);
  CHECK(back.xbar_report.points.size() == r.xbar_report.points.size());
  CHECK(back.excluded_subgroups == r.excluded_subgroups);
  CHECK(phase1_to_json(back) == text);  // serialization is stable

  // a reloaded baseline monitors identically
  const SubgroupMatrix fresh = generate({49.0279, 0.9915, 50.0, 50, 5, 9});
  const MonitorResult a = monitor(fresh, r);
  const MonitorResult b = monitor(fresh, back);
  CHECK(a.xbar_signals == b.xbar_signals);
  CHECK(a.s_signals == b.s_signals);
}

TEST_CASE("phase1 JSON parse failures are typed") {
  CHECK_THROWS_AS(phase1_from_json("{not json"), Error);
  CHECK_THROWS_AS(phase1_from_json("{}"), Error);
}

TEST_CASE("estimation JSON carries the documented fields") {
  const SubgroupMatrix m = generate({49.0279, 0.9915, 50.0, 40, 5, 8});
  const EstimationResult r = estimate(m.flatten());
  const std::string with_trace = estimation_to_json(r, true);
  const std::string without = estimation_to_json(r, false);
  for (const char* key : {"\"mu\"", "\"sigma\"", "\"wc\"", "\"pc\"", "\"iterations\"",
                          "\"converged\"", "\"warnings\""}) {
    CHECK(with_trace.find(key) != std::string::npos);
    CHECK(without.find(key) != std::string::npos);
  }
  CHECK(with_trace.find("\"trace\"") != std::string::npos);
  CHECK(without.find("\"trace\"") == std::string::npos);
}

TEST_CASE("naive comparison JSON lists all five estimators") {
  const SubgroupMatrix m = generate({49.0279, 0.9915, 50.0, 40, 5, 8});
  const std::string doc = naive_comparison_json(m.flatten(), EstimationConfig{});
  for (const char* key : {"\"zero\"", "\"half_c\"", "\"at_c\"", "\"ignore\"", "\"cev\""})
    CHECK(doc.find(key) != std::string::npos);
}
