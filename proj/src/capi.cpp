#include "greenfjsp.h"

#include <cstring>
#include <exception>
#include <string>

#include "gfjsp/brute_force.hpp"
#include "gfjsp/decode.hpp"
#include "gfjsp/error.hpp"
#include "gfjsp/exports.hpp"
#include "gfjsp/milp.hpp"
#include "gfjsp/nsga3.hpp"
#include "gfjsp/tradeoff.hpp"

using namespace gfjsp;

struct gfj_instance {
    Instance value;
};
struct gfj_profile {
    EnergyProfile value;
};
struct gfj_enriched {
    EnrichedInstance value;
};
struct gfj_front {
    ParetoFront value;
};

namespace {

thread_local std::string g_last_error = "no error";

gfj_status status_of(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::Parse: return GFJ_ERR_PARSE;
        case ErrorKind::Param: return GFJ_ERR_PARAM;
        case ErrorKind::Limit: return GFJ_ERR_LIMIT;
        case ErrorKind::Validation: return GFJ_ERR_VALIDATION;
        case ErrorKind::Horizon: return GFJ_ERR_HORIZON;
    }
    return GFJ_ERR_INTERNAL;
}

template <typename Fn>
gfj_status guarded(Fn&& fn) {
    try {
        fn();
        return GFJ_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GFJ_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return GFJ_ERR_INTERNAL;
    }
}

gfj_status fail_param(const char* msg) {
    g_last_error = msg;
    return GFJ_ERR_PARAM;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Axis to_axis(gfj_axis a) {
    switch (a) {
        case GFJ_AXIS_MAKESPAN: return Axis::Makespan;
        case GFJ_AXIS_COST: return Axis::Cost;
        case GFJ_AXIS_EMISSIONS: return Axis::Emissions;
    }
    throw param_error("unknown axis tag");
}

SyntheticMarketParams to_params(const gfj_market_params& p) {
    SyntheticMarketParams out;
    out.seed = p.seed;
    out.hours = p.hours;
    out.price_mean = p.price_mean;
    out.price_sd = p.price_sd;
    out.emission_mean = p.emission_mean;
    out.emission_sd = p.emission_sd;
    out.correlation = p.correlation;
    out.step_minutes = p.step_minutes;
    return out;
}

} // namespace

extern "C" {

const char* gfj_last_error(void) { return g_last_error.c_str(); }

void gfj_string_free(char* s) { delete[] s; }
void gfj_instance_free(gfj_instance* h) { delete h; }
void gfj_profile_free(gfj_profile* h) { delete h; }
void gfj_enriched_free(gfj_enriched* h) { delete h; }
void gfj_front_free(gfj_front* h) { delete h; }

gfj_status gfj_instance_parse(const char* text, gfj_instance** out) {
    if (!text || !out) return fail_param("null argument");
    return guarded([&] { *out = new gfj_instance{parse_instance(text)}; });
}

size_t gfj_instance_jobs(const gfj_instance* h) { return h ? h->value.job_count() : 0; }
size_t gfj_instance_machines(const gfj_instance* h) {
    return h ? static_cast<size_t>(h->value.machine_count()) : 0;
}
size_t gfj_instance_total_operations(const gfj_instance* h) {
    return h ? h->value.total_operations() : 0;
}

gfj_status gfj_profile_load_csv(const char* csv, int step_minutes, gfj_profile** out) {
    if (!csv || !out) return fail_param("null argument");
    return guarded([&] { *out = new gfj_profile{load_energy_profile(csv, step_minutes)}; });
}

void gfj_market_params_init(gfj_market_params* p) {
    if (!p) return;
    p->seed = 1;
    p->hours = 168;
    p->price_mean = 120.0;
    p->price_sd = 60.0;
    p->emission_mean = 400.0;
    p->emission_sd = 120.0;
    p->correlation = 0.72;
    p->step_minutes = 15;
}

gfj_status gfj_profile_generate(const gfj_market_params* params, gfj_profile** out) {
    if (!params || !out) return fail_param("null argument");
    return guarded(
        [&] { *out = new gfj_profile{generate_synthetic_profile(to_params(*params))}; });
}

gfj_status gfj_market_csv_generate(const gfj_market_params* params, char** csv_out) {
    if (!params || !csv_out) return fail_param("null argument");
    return guarded([&] {
        HourlyMarket m = generate_hourly_market(to_params(*params));
        *csv_out = dup_string(render_market_csv(m, "2022-02-01T00:00:00Z"));
    });
}

size_t gfj_profile_steps(const gfj_profile* h) { return h ? h->value.size() : 0; }
int gfj_profile_step_minutes(const gfj_profile* h) { return h ? h->value.step_minutes() : 0; }

gfj_status gfj_profile_correlation(const gfj_profile* h, double* out) {
    if (!h || !out) return fail_param("null argument");
    return guarded([&] { *out = price_emission_correlation(h->value); });
}

gfj_status gfj_enriched_create(const gfj_instance* inst, const gfj_profile* profile,
                               double base_demand_kw, gfj_enriched** out) {
    if (!inst || !profile || !out) return fail_param("null argument");
    return guarded([&] {
        *out = new gfj_enriched{EnrichedInstance(inst->value, profile->value, base_demand_kw)};
    });
}

void gfj_solve_config_init(gfj_solve_config* cfg) {
    if (!cfg) return;
    EvolveConfig defaults;
    cfg->population_size = defaults.population_size;
    cfg->divisions = defaults.divisions;
    cfg->crossover_rate = defaults.crossover_rate;
    cfg->mutation_rate = defaults.mutation_rate;
    cfg->generation_limit = defaults.generation_limit;
    cfg->runtime_limit_seconds = defaults.runtime_limit_seconds;
    cfg->seed = defaults.seed;
    cfg->local_refinement = 1;
}

gfj_status gfj_solve(const gfj_enriched* e, const gfj_solve_config* cfg, gfj_front** out) {
    if (!e || !cfg || !out) return fail_param("null argument");
    return guarded([&] {
        EvolveConfig c;
        c.population_size = cfg->population_size;
        c.divisions = cfg->divisions;
        c.crossover_rate = cfg->crossover_rate;
        c.mutation_rate = cfg->mutation_rate;
        c.generation_limit = cfg->generation_limit;
        c.runtime_limit_seconds = cfg->runtime_limit_seconds;
        c.seed = cfg->seed;
        Refiner refiner = cfg->local_refinement ? memetic_refiner() : Refiner{};
        EvolveResult r = run_evolution(e->value, c, refiner);
        *out = new gfj_front{std::move(r.front)};
    });
}

gfj_status gfj_oracle(const gfj_enriched* e, size_t max_ops, size_t max_horizon, gfj_front** out) {
    if (!e || !out) return fail_param("null argument");
    return guarded([&] {
        BruteForceLimits limits;
        if (max_ops) limits.max_ops = max_ops;
        if (max_horizon) limits.max_horizon = max_horizon;
        *out = new gfj_front{brute_force_pareto(e->value, limits)};
    });
}

size_t gfj_front_size(const gfj_front* h) { return h ? h->value.size() : 0; }

gfj_status gfj_front_objectives(const gfj_front* h, size_t index, double out[3]) {
    if (!h || !out) return fail_param("null argument");
    if (index >= h->value.size()) return fail_param("front index out of range");
    const auto& o = h->value.members[index].objectives;
    out[0] = static_cast<double>(o.makespan);
    out[1] = o.energy_cost_eur;
    out[2] = o.emissions_g;
    return GFJ_OK;
}

gfj_status gfj_front_to_csv(const gfj_front* h, char** out) {
    if (!h || !out) return fail_param("null argument");
    return guarded([&] { *out = dup_string(front_to_csv(h->value)); });
}

gfj_status gfj_front_to_json(const gfj_front* h, const gfj_enriched* e, char** out) {
    if (!h || !e || !out) return fail_param("null argument");
    return guarded([&] { *out = dup_string(front_to_json(h->value, e->value)); });
}

gfj_status gfj_front_schedule_json(const gfj_front* h, size_t index, const gfj_enriched* e,
                                   char** out) {
    if (!h || !e || !out) return fail_param("null argument");
    if (index >= h->value.size()) return fail_param("front index out of range");
    return guarded(
        [&] { *out = dup_string(schedule_to_json(h->value.members[index].schedule, e->value)); });
}

gfj_status gfj_front_gantt_json(const gfj_front* h, size_t index, const gfj_enriched* e,
                                char** out) {
    if (!h || !e || !out) return fail_param("null argument");
    if (index >= h->value.size()) return fail_param("front index out of range");
    return guarded(
        [&] { *out = dup_string(gantt_to_json(h->value.members[index].schedule, e->value)); });
}

gfj_status gfj_front_tradeoff_csv(const gfj_front* h, gfj_axis axis_a, gfj_axis axis_b,
                                  const double* deltas, size_t n_deltas, char** out) {
    if (!h || !out) return fail_param("null argument");
    return guarded([&] {
        std::vector<double> d = deltas && n_deltas ? std::vector<double>(deltas, deltas + n_deltas)
                                                   : std::vector<double>{5.0, 20.0, 50.0, 75.0};
        auto report = tradeoff_table(objective_set(h->value), to_axis(axis_a), to_axis(axis_b), d);
        *out = dup_string(tradeoff_to_csv(report));
    });
}

gfj_status gfj_tradeoff_csv_from_front_json(const char* front_json, gfj_axis axis_a,
                                            gfj_axis axis_b, const double* deltas, size_t n_deltas,
                                            char** out) {
    if (!front_json || !out) return fail_param("null argument");
    return guarded([&] {
        std::vector<double> d = deltas && n_deltas ? std::vector<double>(deltas, deltas + n_deltas)
                                                   : std::vector<double>{5.0, 20.0, 50.0, 75.0};
        auto objs = front_objectives_from_json(front_json);
        auto report = tradeoff_table(objs, to_axis(axis_a), to_axis(axis_b), d);
        *out = dup_string(tradeoff_to_csv(report));
    });
}

gfj_status gfj_emit_milp(const gfj_enriched* e, gfj_milp_objective objective,
                         const double* eps_makespan, const double* eps_cost,
                         const double* eps_emissions, char** out) {
    if (!e || !out) return fail_param("null argument");
    return guarded([&] {
        MilpEmission m;
        switch (objective) {
            case GFJ_MILP_MAKESPAN: m.objective = MilpObjective::Makespan; break;
            case GFJ_MILP_COST: m.objective = MilpObjective::Cost; break;
            case GFJ_MILP_EMISSIONS: m.objective = MilpObjective::Emissions; break;
            default: throw param_error("unknown milp objective tag");
        }
        if (eps_makespan) m.eps_makespan = *eps_makespan;
        if (eps_cost) m.eps_cost = *eps_cost;
        if (eps_emissions) m.eps_emissions = *eps_emissions;
        *out = dup_string(emit_milp(e->value, m));
    });
}

} // extern "C"
