#include "cev/json_io.hpp"

#include "json.hpp"

namespace cev {

namespace {

using nlohmann::json;

json params_json(const ProcessParams& p) { return json{{"mu", p.mu}, {"sigma", p.sigma}}; }

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::MonteCarlo: return "monte_carlo";
    case Provenance::PaperTable: return "paper_table";
    case Provenance::ClassicalConstant: return "classical_constant";
  }
  return "unknown";
}

Provenance provenance_from(const std::string& s) {
  if (s == "monte_carlo") return Provenance::MonteCarlo;
  if (s == "paper_table") return Provenance::PaperTable;
  if (s == "classical_constant") return Provenance::ClassicalConstant;
  fail(errc::parse, "unknown provenance '" + s + "'");
}

json coefficients_json(const LimitCoefficients& c) {
  json doc{{"ucl_xbar", c.ucl_xbar}, {"ucl_s", c.ucl_s},
           {"provenance", provenance_name(c.provenance)},
           {"n", c.n},           {"pc", c.p_c},
           {"clamped", c.clamped}, {"warnings", c.warnings}};
  if (c.sim_config) {
    doc["sim_config"] = json{{"alpha", c.sim_config->alpha},
                             {"replicates", c.sim_config->replicates},
                             {"seed", c.sim_config->seed},
                             {"n", c.sim_config->n},
                             {"pc", c.sim_config->p_c}};
  }
  return doc;
}

LimitCoefficients coefficients_from(const json& doc) {
  LimitCoefficients c{doc.at("ucl_xbar").get<double>(),
                      doc.at("ucl_s").get<double>(),
                      provenance_from(doc.at("provenance").get<std::string>()),
                      doc.at("n").get<int>(),
                      doc.at("pc").get<double>(),
                      std::nullopt,
                      doc.at("clamped").get<bool>(),
                      doc.at("warnings").get<std::vector<std::string>>()};
  if (doc.contains("sim_config")) {
    const json& s = doc.at("sim_config");
    c.sim_config = SimulationConfig{s.at("alpha").get<double>(),
                                    s.at("replicates").get<std::int64_t>(),
                                    s.at("seed").get<std::uint64_t>(), s.at("n").get<int>(),
                                    s.at("pc").get<double>()};
  }
  return c;
}

const char* kind_name(ChartKind kind) {
  return kind == ChartKind::CevXbar ? "cev_xbar" : "cev_s";
}

ChartKind kind_from(const std::string& s) {
  if (s == "cev_xbar") return ChartKind::CevXbar;
  if (s == "cev_s") return ChartKind::CevS;
  fail(errc::parse, "unknown chart kind '" + s + "'");
}

json report_json(const ChartReport& r) {
  json points = json::array();
  for (const auto& p : r.points)
    points.push_back(json{{"subgroup", p.subgroup}, {"statistic", p.statistic}});
  return json{{"chart_kind", kind_name(r.chart_kind)},
              {"points", points},
              {"ucl", r.ucl},
              {"signals", r.signals},
              {"params_used", params_json(r.params_used)},
              {"coefficients_used", coefficients_json(r.coefficients_used)}};
}

ChartReport report_from(const json& doc) {
  const json& pj = doc.at("params_used");
  ChartReport r{kind_from(doc.at("chart_kind").get<std::string>()),
                {},
                doc.at("ucl").get<double>(),
                doc.at("signals").get<std::vector<int>>(),
                ProcessParams(pj.at("mu").get<double>(), pj.at("sigma").get<double>()),
                coefficients_from(doc.at("coefficients_used"))};
  for (const auto& p : doc.at("points"))
    r.points.push_back({p.at("subgroup").get<int>(), p.at("statistic").get<double>()});
  return r;
}

}  // namespace

std::string estimation_to_json(const EstimationResult& result, bool include_trace) {
  json doc{{"mu", result.params.mu},     {"sigma", result.params.sigma},
           {"wc", result.w_c},           {"pc", result.p_c},
           {"iterations", result.iterations}, {"converged", result.converged},
           {"warnings", result.warnings}};
  if (include_trace) {
    json trace = json::array();
    for (const auto& p : result.trace) trace.push_back(json::array({p.mu, p.sigma}));
    doc["trace"] = trace;
  }
  return doc.dump(2) + "\n";
}

std::string coefficients_to_json(const LimitCoefficients& coeffs) {
  return coefficients_json(coeffs).dump(2) + "\n";
}

std::string comparison_to_json(const TableComparisonReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back(json{{"n", r.n},
                        {"one_minus_pc", r.one_minus_pc},
                        {"paper_ucl_xbar", r.paper_xbar},
                        {"paper_ucl_s", r.paper_s},
                        {"mc_ucl_xbar", r.mc_xbar},
                        {"mc_ucl_s", r.mc_s},
                        {"a3", r.a3},
                        {"b4", r.b4},
                        {"d_mc_paper_xbar", std::abs(r.mc_xbar - r.paper_xbar)},
                        {"d_mc_paper_s", std::abs(r.mc_s - r.paper_s)},
                        {"d_paper_a3", std::abs(r.paper_xbar - r.a3)},
                        {"d_paper_b4", std::abs(r.paper_s - r.b4)}});
  }
  json doc{{"alpha", report.alpha},
           {"replicates", report.replicates},
           {"seed", report.seed},
           {"rows", rows}};
  return doc.dump(2) + "\n";
}

std::string phase1_to_json(const Phase1Result& result) {
  json doc{{"final_params", params_json(result.final_params)},
           {"w_c", result.w_c},
           {"p_c", result.p_c},
           {"xbar_report", report_json(result.xbar_report)},
           {"s_report", report_json(result.s_report)},
           {"excluded_subgroups", result.excluded_subgroups},
           {"rounds", result.rounds},
           {"max_rounds_reached", result.max_rounds_reached},
           {"n", result.n},
           {"scheme", json{{"limit_c", result.scheme.limit_c}, {"side", "left"}}},
           {"warnings", result.warnings}};
  return doc.dump(2) + "\n";
}

Phase1Result phase1_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("invalid phase1 JSON: ") + e.what());
  }
  try {
    const json& pj = doc.at("final_params");
    const json& sj = doc.at("scheme");
    if (sj.at("side").get<std::string>() != "left")
      fail(errc::parse, "only left censoring is supported");
    return Phase1Result{
        ProcessParams(pj.at("mu").get<double>(), pj.at("sigma").get<double>()),
        doc.at("w_c").get<double>(),
        doc.at("p_c").get<double>(),
        report_from(doc.at("xbar_report")),
        report_from(doc.at("s_report")),
        doc.at("excluded_subgroups").get<std::vector<int>>(),
        doc.at("rounds").get<int>(),
        doc.at("max_rounds_reached").get<bool>(),
        doc.at("n").get<int>(),
        CensoringScheme(sj.at("limit_c").get<double>()),
        doc.at("warnings").get<std::vector<std::string>>()};
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("phase1 JSON missing fields: ") + e.what());
  }
}

std::string monitor_to_json(const MonitorResult& result) {
  json doc{{"xbar_signals", result.xbar_signals}, {"s_signals", result.s_signals}};
  return doc.dump(2) + "\n";
}

std::string naive_comparison_json(const CensoredSample& sample, const EstimationConfig& config) {
  const EstimationResult cev = estimate(sample, config);
  auto naive = [&](NaiveMethod m) { return params_json(naive_estimate(sample, m)); };
  json doc{{"zero", naive(NaiveMethod::Zero)},
           {"half_c", naive(NaiveMethod::HalfC)},
           {"at_c", naive(NaiveMethod::AtC)},
           {"ignore", naive(NaiveMethod::Ignore)},
           {"cev", json{{"mu", cev.params.mu},
                        {"sigma", cev.params.sigma},
                        {"wc", cev.w_c},
                        {"pc", cev.p_c},
                        {"iterations", cev.iterations},
                        {"converged", cev.converged}}}};
  return doc.dump(2) + "\n";
}

}  // namespace cev
