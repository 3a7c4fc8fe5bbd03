/* isr -- implied Sharpe ratio approximation library, C API.
 *
 * Opaque handles plus plain structs; every fallible call returns an
 * isr_status and leaves a human-readable message in isr_last_error().
 * Thread safety: models are immutable after creation and can be shared;
 * the last-error buffer is thread local.
 */
#ifndef ISR_H
#define ISR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct isr_model isr_model;

typedef enum {
    ISR_OK = 0,
    ISR_ERR_INVALID_ARGUMENT = 1,
    ISR_ERR_DOMAIN = 2,
    ISR_ERR_VALUE_DOMINANCE = 3,
    ISR_ERR_DEGENERATE_ANCHOR = 4,
    ISR_ERR_IO = 5,
    ISR_ERR_POINT_FAILURES = 6, /* sweep/compare finished but rows carry errors */
    ISR_ERR_INTERNAL = 7
} isr_status;

typedef struct {
    double t;
    double T;
    double x;     /* log spot */
    double y;     /* volatility factor */
    double k;     /* log strike */
    double nu;    /* signed option count */
    double gamma; /* risk aversion, > 0 */
    double w;     /* initial wealth */
    double x_bar; /* expansion anchor */
    double y_bar;
} isr_scenario;

typedef enum { ISR_METHOD_AUTO = 0, ISR_METHOD_GENERAL = 1, ISR_METHOD_MMM_REMARK = 2 } isr_method;
typedef enum { ISR_EXP_CONVOLUTION = 0, ISR_EXP_PRINTED = 1 } isr_exp_source;

typedef struct {
    int order;                 /* 0, 1 or 2 */
    isr_method method;
    isr_exp_source exp_source;
    int quad_order;            /* <= 0 for the default (32) */
    int hermite_order;         /* <= 0 for the default (64) */
} isr_eval_options;

typedef struct {
    double lambda0, lambda1, lambda2, lambda_total;
    double psi0, psi1, psi2;
    double p0, p1, p2;
    double radicand;
    isr_method method_used;
    isr_exp_source exp_source_used;
} isr_sharpe_result;

/* Model constructors return NULL on invalid parameters (see isr_last_error). */
isr_model* isr_model_heston(double kappa, double theta, double delta, double rho);
isr_model* isr_model_reciprocal_heston(double mu, double a, double b, double kappa, double rho,
                                       int use_rho_squared_drift);
isr_model* isr_model_black_scholes(double mu, double sigma);
void isr_model_free(isr_model* model);

/* Second-order implied Sharpe ratio approximation at one scenario. */
isr_status isr_implied_sharpe(const isr_model* model, const isr_scenario* scenario,
                              const isr_eval_options* options /* NULL for defaults */,
                              isr_sharpe_result* out);

/* Merton value -(1/gamma) exp(-gamma w - (T-t) lambda^2 / 2). */
isr_status isr_merton_value(double t, double w, double lambda, double gamma, double T,
                            double* out);

/* Runs a sweep config file; writes CSV (or JSON) to out_path (NULL: the path
 * from the config). *point_errors receives the number of failed rows;
 * returns ISR_ERR_POINT_FAILURES when that count is nonzero. */
isr_status isr_run_sweep(const char* config_path, const char* out_path, int as_json, int verbose,
                         long* point_errors);

/* Oracle comparison report for a config file (key = value text). */
isr_status isr_run_compare(const char* config_path, const char* out_path, int verbose,
                           long* failures);

/* The built-in figure-family sweep configs; free with isr_string_free. */
char* isr_presets(void);
void isr_string_free(char* s);

const char* isr_last_error(void);
const char* isr_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ISR_H */
