/* cevchart: control charts for processes measured against a detection limit.
 *
 * C interface of the shared library. Every fallible entry point returns a
 * CEVC_* status code; on failure cevc_last_error() holds a message for the
 * calling thread. Documents (JSON, CSV, SVG) come back as heap strings that
 * the caller releases with cevc_string_free().
 */
#ifndef CEVCHART_H
#define CEVCHART_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define CEVC_OK 0
#define CEVC_ERR_DOMAIN 1        /* argument outside its mathematical domain */
#define CEVC_ERR_DEGENERATE 2    /* constant / zero-variance sample */
#define CEVC_ERR_ALL_CENSORED 3  /* no uncensored observation */
#define CEVC_ERR_INSUFFICIENT 4  /* fewer observations than required */
#define CEVC_ERR_PARSE 5         /* malformed input document */
#define CEVC_ERR_CONFIG 6        /* inconsistent request */
#define CEVC_ERR_IO 7            /* file could not be read or written */
#define CEVC_ERR_NULL_ARG 8
#define CEVC_ERR_INTERNAL 9

typedef struct cevc_matrix cevc_matrix;  /* k x n subgroups with a detection limit */
typedef struct cevc_phase1 cevc_phase1;  /* completed initial-implementation baseline */

const char* cevc_version(void);

/* Message for the most recent failure on the calling thread. */
const char* cevc_last_error(void);

void cevc_string_free(char* doc);
void cevc_matrix_free(cevc_matrix* m);
void cevc_phase1_free(cevc_phase1* p);

/* --- scalar kernels ---------------------------------------------------- */

int cevc_normal_cdf(double z, double* out);
int cevc_normal_quantile(double p, double* out);
int cevc_censoring_proportion(double mu, double sigma, double limit_c, double* out);
int cevc_cev_weight(double mu, double sigma, double limit_c, double* out);
int cevc_lambda_factor(double z_c, double* out);
int cevc_classical_constants(int n, double* c4, double* a3, double* b4);

/* --- subgroup matrices -------------------------------------------------- */

/* Wide CSV: one subgroup per row, `subgroup_size` fields, decimal point '.',
 * optional header row; numeric values <= threshold and the token '<' are
 * censored at the threshold. */
int cevc_matrix_from_csv(const char* path, double threshold, int subgroup_size,
                         cevc_matrix** out);
int cevc_matrix_from_rows(const double* data, int k, int n, double threshold, cevc_matrix** out);
int cevc_matrix_generate(double mu, double sigma, double limit_c, int k, int n, uint64_t seed,
                         cevc_matrix** out);
int cevc_matrix_dims(const cevc_matrix* m, int* k, int* n);
int cevc_matrix_censored_count(const cevc_matrix* m, int* count);
int cevc_matrix_to_csv(const cevc_matrix* m, char** out_doc);

/* --- estimation ---------------------------------------------------------- */

/* variant: "ap1" or "ap2". */
int cevc_estimate_json(const cevc_matrix* m, double tolerance, int max_iterations,
                       const char* variant, int include_trace, char** out_json);
int cevc_compare_naive_json(const cevc_matrix* m, double tolerance, int max_iterations,
                            const char* variant, char** out_json);

/* --- control-limit coefficients ------------------------------------------ */

/* source: "table", "montecarlo" or "classical". alpha/replicates/seed apply
 * to "montecarlo" only. */
int cevc_limits_json(int n, double p_c, const char* source, double alpha, int64_t replicates,
                     uint64_t seed, char** out_json);
int cevc_coefficient_table_csv(char** out_csv);
int cevc_tables_report_json(double alpha, int64_t replicates, uint64_t seed, char** out_json);

/* --- phase I / phase II ---------------------------------------------------- */

int cevc_phase1_run(const cevc_matrix* m, double tolerance, int max_iterations,
                    const char* variant, const char* limit_source, int max_rounds, double alpha,
                    int64_t replicates, uint64_t seed, cevc_phase1** out);
int cevc_phase1_to_json(const cevc_phase1* p, char** out_json);
int cevc_phase1_from_json(const char* json_text, cevc_phase1** out);

/* Subgroup size and detection limit the baseline was built on. */
int cevc_phase1_info(const cevc_phase1* p, int* n, double* limit_c);

/* kind: "xbar" or "s"; format: "svg", "csv" or "json"; units may be NULL. */
int cevc_phase1_render(const cevc_phase1* p, const char* kind, const char* format,
                       const char* units, char** out_doc);

int cevc_monitor_json(const cevc_phase1* baseline, const cevc_matrix* subgroups,
                      char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* CEVCHART_H */
