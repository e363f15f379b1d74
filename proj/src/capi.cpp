#include "cevchart.h"

#include <cstring>
#include <string>

#include "cev/chart.hpp"
#include "cev/csv.hpp"
#include "cev/datagen.hpp"
#include "cev/json_io.hpp"
#include "cev/render.hpp"

namespace {

thread_local std::string g_last_error;

int code_of(const cev::Error& e) {
  switch (e.code()) {
    case cev::errc::domain: return CEVC_ERR_DOMAIN;
    case cev::errc::degenerate: return CEVC_ERR_DEGENERATE;
    case cev::errc::all_censored: return CEVC_ERR_ALL_CENSORED;
    case cev::errc::insufficient_data: return CEVC_ERR_INSUFFICIENT;
    case cev::errc::parse: return CEVC_ERR_PARSE;
    case cev::errc::config: return CEVC_ERR_CONFIG;
    case cev::errc::io: return CEVC_ERR_IO;
  }
  return CEVC_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return CEVC_OK;
  } catch (const cev::Error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CEVC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CEVC_ERR_INTERNAL;
  }
}

int null_arg() {
  g_last_error = "null argument";
  return CEVC_ERR_NULL_ARG;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cev::Variant variant_from(const char* name) {
  const std::string v = name ? name : "";
  if (v == "ap1") return cev::Variant::Ap1;
  if (v == "ap2") return cev::Variant::Ap2;
  cev::fail(cev::errc::config, "unknown variant '" + v + "' (expected ap1 or ap2)");
}

cev::EstimationConfig est_config(double tolerance, int max_iterations, const char* variant) {
  cev::EstimationConfig cfg;
  cfg.tolerance = tolerance;
  cfg.max_iterations = max_iterations;
  cfg.variant = variant_from(variant);
  return cfg;
}

}  // namespace

struct cevc_matrix {
  cev::SubgroupMatrix value;
};

struct cevc_phase1 {
  cev::Phase1Result value;
};

extern "C" {

const char* cevc_version(void) { return "0.1.0"; }

const char* cevc_last_error(void) { return g_last_error.c_str(); }

void cevc_string_free(char* doc) { delete[] doc; }
void cevc_matrix_free(cevc_matrix* m) { delete m; }
void cevc_phase1_free(cevc_phase1* p) { delete p; }

int cevc_normal_cdf(double z, double* out) {
  if (!out) return null_arg();
  return guarded([&] { *out = cev::std_normal_cdf(z); });
}

int cevc_normal_quantile(double p, double* out) {
  if (!out) return null_arg();
  return guarded([&] { *out = cev::std_normal_quantile(p); });
}

int cevc_censoring_proportion(double mu, double sigma, double limit_c, double* out) {
  if (!out) return null_arg();
  return guarded([&] {
    *out = cev::censoring_proportion(cev::ProcessParams(mu, sigma), cev::CensoringScheme(limit_c));
  });
}

int cevc_cev_weight(double mu, double sigma, double limit_c, double* out) {
  if (!out) return null_arg();
  return guarded([&] {
    *out = cev::cev_weight(cev::ProcessParams(mu, sigma), cev::CensoringScheme(limit_c));
  });
}

int cevc_lambda_factor(double z_c, double* out) {
  if (!out) return null_arg();
  return guarded([&] { *out = cev::lambda_factor(cev::StandardizedCensorPoint(z_c)); });
}

int cevc_classical_constants(int n, double* c4, double* a3, double* b4) {
  if (!c4 || !a3 || !b4) return null_arg();
  return guarded([&] {
    const cev::ChartConstants c = cev::classical_constants(n);
    *c4 = c.c4;
    *a3 = c.a3;
    *b4 = c.b4;
  });
}

int cevc_matrix_from_csv(const char* path, double threshold, int subgroup_size,
                         cevc_matrix** out) {
  if (!path || !out) return null_arg();
  return guarded(
      [&] { *out = new cevc_matrix{cev::ingest_csv(path, threshold, subgroup_size)}; });
}

int cevc_matrix_from_rows(const double* data, int k, int n, double threshold, cevc_matrix** out) {
  if (!data || !out) return null_arg();
  return guarded([&] {
    std::vector<double> cells(data, data + static_cast<std::size_t>(k) * n);
    *out = new cevc_matrix{
        cev::SubgroupMatrix(k, n, std::move(cells), cev::CensoringScheme(threshold))};
  });
}

int cevc_matrix_generate(double mu, double sigma, double limit_c, int k, int n, uint64_t seed,
                         cevc_matrix** out) {
  if (!out) return null_arg();
  return guarded(
      [&] { *out = new cevc_matrix{cev::generate({mu, sigma, limit_c, k, n, seed})}; });
}

int cevc_matrix_dims(const cevc_matrix* m, int* k, int* n) {
  if (!m || !k || !n) return null_arg();
  *k = m->value.k();
  *n = m->value.n();
  return CEVC_OK;
}

int cevc_matrix_censored_count(const cevc_matrix* m, int* count) {
  if (!m || !count) return null_arg();
  *count = m->value.censored_count();
  return CEVC_OK;
}

int cevc_matrix_to_csv(const cevc_matrix* m, char** out_doc) {
  if (!m || !out_doc) return null_arg();
  return guarded([&] { *out_doc = dup_string(cev::matrix_to_csv(m->value)); });
}

int cevc_estimate_json(const cevc_matrix* m, double tolerance, int max_iterations,
                       const char* variant, int include_trace, char** out_json) {
  if (!m || !out_json) return null_arg();
  return guarded([&] {
    const cev::EstimationResult result =
        cev::estimate(m->value.flatten(), est_config(tolerance, max_iterations, variant));
    *out_json = dup_string(cev::estimation_to_json(result, include_trace != 0));
  });
}

int cevc_compare_naive_json(const cevc_matrix* m, double tolerance, int max_iterations,
                            const char* variant, char** out_json) {
  if (!m || !out_json) return null_arg();
  return guarded([&] {
    *out_json = dup_string(cev::naive_comparison_json(
        m->value.flatten(), est_config(tolerance, max_iterations, variant)));
  });
}

int cevc_limits_json(int n, double p_c, const char* source, double alpha, int64_t replicates,
                     uint64_t seed, char** out_json) {
  if (!source || !out_json) return null_arg();
  return guarded([&] {
    const std::string src = source;
    cev::LimitCoefficients coeffs = [&] {
      if (src == "table") return cev::table_coefficients(n, p_c);
      if (src == "montecarlo")
        return cev::simulate_coefficients({alpha, replicates, seed, n, p_c});
      if (src == "classical") return cev::classical_coefficients(n, p_c);
      cev::fail(cev::errc::config, "unknown limit source '" + src + "'");
    }();
    *out_json = dup_string(cev::coefficients_to_json(coeffs));
  });
}

int cevc_coefficient_table_csv(char** out_csv) {
  if (!out_csv) return null_arg();
  return guarded([&] { *out_csv = dup_string(cev::CoefficientTable::builtin().to_csv()); });
}

int cevc_tables_report_json(double alpha, int64_t replicates, uint64_t seed, char** out_json) {
  if (!out_json) return null_arg();
  return guarded([&] {
    *out_json = dup_string(cev::comparison_to_json(
        cev::reproduce_paper_tables(alpha, replicates, seed)));
  });
}

int cevc_phase1_run(const cevc_matrix* m, double tolerance, int max_iterations,
                    const char* variant, const char* limit_source, int max_rounds, double alpha,
                    int64_t replicates, uint64_t seed, cevc_phase1** out) {
  if (!m || !limit_source || !out) return null_arg();
  return guarded([&] {
    const std::string src = limit_source;
    cev::Phase1Options options;
    options.estimation = est_config(tolerance, max_iterations, variant);
    if (src == "table")
      options.limit_source = cev::LimitSource::Table;
    else if (src == "montecarlo")
      options.limit_source = cev::LimitSource::MonteCarlo;
    else
      cev::fail(cev::errc::config, "unknown limit source '" + src + "'");
    options.max_rounds = max_rounds;
    options.alpha = alpha;
    options.replicates = replicates;
    options.seed = seed;
    *out = new cevc_phase1{cev::run_phase1(m->value, options)};
  });
}

int cevc_phase1_to_json(const cevc_phase1* p, char** out_json) {
  if (!p || !out_json) return null_arg();
  return guarded([&] { *out_json = dup_string(cev::phase1_to_json(p->value)); });
}

int cevc_phase1_from_json(const char* json_text, cevc_phase1** out) {
  if (!json_text || !out) return null_arg();
  return guarded([&] { *out = new cevc_phase1{cev::phase1_from_json(json_text)}; });
}

int cevc_phase1_info(const cevc_phase1* p, int* n, double* limit_c) {
  if (!p || !n || !limit_c) return null_arg();
  *n = p->value.n;
  *limit_c = p->value.scheme.limit_c;
  return CEVC_OK;
}

int cevc_phase1_render(const cevc_phase1* p, const char* kind, const char* format,
                       const char* units, char** out_doc) {
  if (!p || !kind || !format || !out_doc) return null_arg();
  return guarded([&] {
    const std::string k = kind;
    const cev::ChartReport* report = nullptr;
    if (k == "xbar")
      report = &p->value.xbar_report;
    else if (k == "s")
      report = &p->value.s_report;
    else
      cev::fail(cev::errc::config, "unknown chart kind '" + k + "' (expected xbar or s)");
    cev::RenderOptions options;
    if (units) options.units = units;
    *out_doc =
        dup_string(cev::render_chart(*report, cev::chart_format_from_name(format), options));
  });
}

int cevc_monitor_json(const cevc_phase1* baseline, const cevc_matrix* subgroups,
                      char** out_json) {
  if (!baseline || !subgroups || !out_json) return null_arg();
  return guarded([&] {
    *out_json = dup_string(cev::monitor_to_json(cev::monitor(subgroups->value, baseline->value)));
  });
}

}  // extern "C"
