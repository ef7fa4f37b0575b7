/* greenfjsp — energy-aware flexible job shop scheduling.
 *
 * C API of the shared library. All functions return GFJ_OK (0) on success or
 * a gfj_status error code; gfj_last_error() describes the most recent failure
 * on the calling thread. Objects are opaque handles released with their
 * gfj_*_free function; strings returned through char** are released with
 * gfj_string_free.
 */
#ifndef GREENFJSP_H
#define GREENFJSP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gfj_status {
    GFJ_OK = 0,
    GFJ_ERR_PARSE = 1,      /* malformed instance or market file */
    GFJ_ERR_PARAM = 2,      /* invalid argument value */
    GFJ_ERR_LIMIT = 3,      /* combinatorial guard refused the request */
    GFJ_ERR_VALIDATION = 4, /* schedule violates its invariants */
    GFJ_ERR_HORIZON = 5,    /* operation would overrun the time horizon */
    GFJ_ERR_INTERNAL = 6
} gfj_status;

typedef struct gfj_instance gfj_instance;
typedef struct gfj_profile gfj_profile;
typedef struct gfj_enriched gfj_enriched;
typedef struct gfj_front gfj_front;

/* Description of the most recent error on this thread; never NULL. */
const char* gfj_last_error(void);

void gfj_string_free(char* s);
void gfj_instance_free(gfj_instance* h);
void gfj_profile_free(gfj_profile* h);
void gfj_enriched_free(gfj_enriched* h);
void gfj_front_free(gfj_front* h);

/* --- problem data ------------------------------------------------------- */

/* Classic FJSP text layout; see README for the grammar. */
gfj_status gfj_instance_parse(const char* text, gfj_instance** out);
size_t gfj_instance_jobs(const gfj_instance* h);
size_t gfj_instance_machines(const gfj_instance* h);
size_t gfj_instance_total_operations(const gfj_instance* h);

/* Hourly market CSV (timestamp,price_eur_mwh,emission_g_per_kwh) replicated
 * to step resolution. */
gfj_status gfj_profile_load_csv(const char* csv, int step_minutes, gfj_profile** out);

typedef struct gfj_market_params {
    uint64_t seed;
    int hours;
    double price_mean;
    double price_sd;
    double emission_mean;
    double emission_sd;
    double correlation; /* in [-1, 1] */
    int step_minutes;
} gfj_market_params;

/* Reasonable defaults: 168 hours, prices 120±60 EUR/MWh, emissions
 * 400±120 g/kWh, correlation 0.72, 15-minute steps. */
void gfj_market_params_init(gfj_market_params* p);

gfj_status gfj_profile_generate(const gfj_market_params* params, gfj_profile** out);

/* Synthetic hourly market data rendered as ingestion-ready CSV. */
gfj_status gfj_market_csv_generate(const gfj_market_params* params, char** csv_out);

size_t gfj_profile_steps(const gfj_profile* h);
int gfj_profile_step_minutes(const gfj_profile* h);
gfj_status gfj_profile_correlation(const gfj_profile* h, double* out);

/* Attaches a profile and per-job power demands (base_demand_kw * i / |J|). */
gfj_status gfj_enriched_create(const gfj_instance* inst, const gfj_profile* profile,
                               double base_demand_kw, gfj_enriched** out);

/* --- solving -------------------------------------------------------------- */

typedef struct gfj_solve_config {
    size_t population_size; /* positive multiple of 4 */
    int divisions;          /* Das-Dennis reference point divisions */
    double crossover_rate;
    double mutation_rate;
    size_t generation_limit;
    double runtime_limit_seconds; /* 0 disables the wall clock limit */
    uint64_t seed;
    int local_refinement; /* nonzero enables the memetic step */
} gfj_solve_config;

/* Defaults: population 92, 12 divisions, crossover 0.9, mutation 0.1,
 * 200 generations, no wall clock limit, seed 1, refinement on. */
void gfj_solve_config_init(gfj_solve_config* cfg);

/* Memetic NSGA-III; returns the estimated Pareto front. */
gfj_status gfj_solve(const gfj_enriched* e, const gfj_solve_config* cfg, gfj_front** out);

/* Exact front of a tiny instance by exhaustive enumeration. Refuses with
 * GFJ_ERR_LIMIT beyond max_ops operations or max_horizon steps. */
gfj_status gfj_oracle(const gfj_enriched* e, size_t max_ops, size_t max_horizon, gfj_front** out);

/* --- fronts and exports ---------------------------------------------------- */

size_t gfj_front_size(const gfj_front* h);
gfj_status gfj_front_objectives(const gfj_front* h, size_t index, double out[3]);
gfj_status gfj_front_to_csv(const gfj_front* h, char** out);
gfj_status gfj_front_to_json(const gfj_front* h, const gfj_enriched* e, char** out);
gfj_status gfj_front_schedule_json(const gfj_front* h, size_t index, const gfj_enriched* e,
                                   char** out);
gfj_status gfj_front_gantt_json(const gfj_front* h, size_t index, const gfj_enriched* e,
                                char** out);

/* Axis tags for trade-off analysis. */
typedef enum gfj_axis { GFJ_AXIS_MAKESPAN = 0, GFJ_AXIS_COST = 1, GFJ_AXIS_EMISSIONS = 2 } gfj_axis;

/* Savings of axis B under tolerated relative increases of axis A, as CSV
 * (axis_a,axis_b,baseline_a,baseline_b,delta_percent,best_b,savings_percent). */
gfj_status gfj_front_tradeoff_csv(const gfj_front* h, gfj_axis axis_a, gfj_axis axis_b,
                                  const double* deltas, size_t n_deltas, char** out);

/* Same analysis over a previously exported front JSON document. */
gfj_status gfj_tradeoff_csv_from_front_json(const char* front_json, gfj_axis axis_a,
                                            gfj_axis axis_b, const double* deltas, size_t n_deltas,
                                            char** out);

/* --- MILP emission ---------------------------------------------------------- */

typedef enum gfj_milp_objective {
    GFJ_MILP_MAKESPAN = 0,
    GFJ_MILP_COST = 1,
    GFJ_MILP_EMISSIONS = 2
} gfj_milp_objective;

/* LP-format text of the scheduling MILP with optional epsilon bounds on the
 * non-objective criteria (pass NULL to omit a bound). */
gfj_status gfj_emit_milp(const gfj_enriched* e, gfj_milp_objective objective,
                         const double* eps_makespan, const double* eps_cost,
                         const double* eps_emissions, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GREENFJSP_H */
