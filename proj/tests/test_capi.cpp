#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "greenfjsp.h"
#include "helpers.hpp"

namespace {

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { gfj_string_free(s); }
};

} // namespace

TEST_CASE("C API: instance parsing and error reporting") {
    gfj_instance* inst = nullptr;
    std::string text = testutil::read_file(testutil::data_path("mk01.fjs"));
    REQUIRE(gfj_instance_parse(text.c_str(), &inst) == GFJ_OK);
    CHECK(gfj_instance_jobs(inst) == 10);
    CHECK(gfj_instance_machines(inst) == 6);
    CHECK(gfj_instance_total_operations(inst) == 55);
    gfj_instance_free(inst);

    gfj_instance* bad = nullptr;
    CHECK(gfj_instance_parse("x y\n", &bad) == GFJ_ERR_PARSE);
    CHECK(std::strstr(gfj_last_error(), "line 1") != nullptr);
    CHECK(gfj_instance_parse(nullptr, &bad) == GFJ_ERR_PARAM);
}

TEST_CASE("C API: market generation, loading, correlation, enrichment") {
    gfj_market_params params;
    gfj_market_params_init(&params);
    params.seed = 7;
    params.hours = 1200;
    params.correlation = 0.72;

    StringGuard csv;
    REQUIRE(gfj_market_csv_generate(&params, &csv.s) == GFJ_OK);

    gfj_profile* loaded = nullptr;
    REQUIRE(gfj_profile_load_csv(csv.s, 15, &loaded) == GFJ_OK);
    CHECK(gfj_profile_steps(loaded) == 1200 * 4);
    CHECK(gfj_profile_step_minutes(loaded) == 15);

    gfj_profile* direct = nullptr;
    REQUIRE(gfj_profile_generate(&params, &direct) == GFJ_OK);
    CHECK(gfj_profile_steps(direct) == gfj_profile_steps(loaded));

    double r = 0.0;
    REQUIRE(gfj_profile_correlation(loaded, &r) == GFJ_OK);
    CHECK(r > 0.6);
    CHECK(r < 0.84);

    gfj_instance* inst = nullptr;
    REQUIRE(gfj_instance_parse("2 2\n1 2 1 1 2 2\n1 1 2 1\n", &inst) == GFJ_OK);
    gfj_enriched* enriched = nullptr;
    REQUIRE(gfj_enriched_create(inst, loaded, 500.0, &enriched) == GFJ_OK);

    CHECK(gfj_enriched_create(inst, loaded, -5.0, &enriched) == GFJ_ERR_PARAM);

    gfj_enriched_free(enriched);
    gfj_instance_free(inst);
    gfj_profile_free(loaded);
    gfj_profile_free(direct);
}

TEST_CASE("C API: solve, exports, tradeoff, oracle, milp") {
    gfj_instance* inst = nullptr;
    REQUIRE(gfj_instance_parse("2 2\n2 1 1 1 2 1 2 2 1\n1 1 2 1\n", &inst) == GFJ_OK);

    gfj_market_params params;
    gfj_market_params_init(&params);
    params.seed = 3;
    params.hours = 3; // 12 steps at 15-minute resolution
    gfj_profile* profile = nullptr;
    REQUIRE(gfj_profile_generate(&params, &profile) == GFJ_OK);
    gfj_enriched* e = nullptr;
    REQUIRE(gfj_enriched_create(inst, profile, 500.0, &e) == GFJ_OK);

    gfj_solve_config cfg;
    gfj_solve_config_init(&cfg);
    cfg.population_size = 32;
    cfg.divisions = 6;
    cfg.generation_limit = 30;
    cfg.seed = 9;

    gfj_front* front = nullptr;
    REQUIRE(gfj_solve(e, &cfg, &front) == GFJ_OK);
    REQUIRE(gfj_front_size(front) > 0);

    double objs[3];
    REQUIRE(gfj_front_objectives(front, 0, objs) == GFJ_OK);
    CHECK(objs[0] > 0.0);
    CHECK(gfj_front_objectives(front, gfj_front_size(front), objs) == GFJ_ERR_PARAM);

    StringGuard front_csv, front_json, sched_json, gantt_json, tradeoff_csv, lp;
    REQUIRE(gfj_front_to_csv(front, &front_csv.s) == GFJ_OK);
    CHECK(std::strstr(front_csv.s, "makespan,energy_cost_eur") != nullptr);
    REQUIRE(gfj_front_to_json(front, e, &front_json.s) == GFJ_OK);
    REQUIRE(gfj_front_schedule_json(front, 0, e, &sched_json.s) == GFJ_OK);
    CHECK(std::strstr(sched_json.s, "operations") != nullptr);
    REQUIRE(gfj_front_gantt_json(front, 0, e, &gantt_json.s) == GFJ_OK);
    CHECK(std::strstr(gantt_json.s, "lanes") != nullptr);

    REQUIRE(gfj_front_tradeoff_csv(front, GFJ_AXIS_MAKESPAN, GFJ_AXIS_COST, nullptr, 0,
                                   &tradeoff_csv.s) == GFJ_OK);
    CHECK(std::strstr(tradeoff_csv.s, "savings_percent") != nullptr);

    StringGuard tradeoff_from_json;
    REQUIRE(gfj_tradeoff_csv_from_front_json(front_json.s, GFJ_AXIS_MAKESPAN, GFJ_AXIS_EMISSIONS,
                                             nullptr, 0, &tradeoff_from_json.s) == GFJ_OK);

    gfj_front* oracle = nullptr;
    REQUIRE(gfj_oracle(e, 6, 24, &oracle) == GFJ_OK);
    CHECK(gfj_front_size(oracle) > 0);
    // The heuristic front never dominates the exact one.
    for (size_t i = 0; i < gfj_front_size(front); ++i) {
        double h[3];
        gfj_front_objectives(front, i, h);
        bool covered = false;
        for (size_t j = 0; j < gfj_front_size(oracle); ++j) {
            double x[3];
            gfj_front_objectives(oracle, j, x);
            if (x[0] <= h[0] && x[1] <= h[1] && x[2] <= h[2]) covered = true;
        }
        CHECK(covered);
    }
    gfj_front* refused = nullptr;
    CHECK(gfj_oracle(e, 1, 24, &refused) == GFJ_ERR_LIMIT);

    REQUIRE(gfj_emit_milp(e, GFJ_MILP_COST, nullptr, nullptr, nullptr, &lp.s) == GFJ_OK);
    CHECK(std::strstr(lp.s, "Minimize\n obj: psum") != nullptr);
    double eps_cost = 1.0;
    CHECK(gfj_emit_milp(e, GFJ_MILP_COST, nullptr, &eps_cost, nullptr, &lp.s) == GFJ_ERR_PARAM);

    gfj_front_free(front);
    gfj_front_free(oracle);
    gfj_enriched_free(e);
    gfj_profile_free(profile);
    gfj_instance_free(inst);
}

TEST_CASE("C API: solve is deterministic for a fixed seed") {
    gfj_instance* inst = nullptr;
    REQUIRE(gfj_instance_parse("1 2\n2 2 1 1 2 1 1 1 2\n", &inst) == GFJ_OK);
    gfj_market_params params;
    gfj_market_params_init(&params);
    params.hours = 3;
    gfj_profile* profile = nullptr;
    REQUIRE(gfj_profile_generate(&params, &profile) == GFJ_OK);
    gfj_enriched* e = nullptr;
    REQUIRE(gfj_enriched_create(inst, profile, 500.0, &e) == GFJ_OK);

    gfj_solve_config cfg;
    gfj_solve_config_init(&cfg);
    cfg.population_size = 16;
    cfg.divisions = 4;
    cfg.generation_limit = 10;
    cfg.seed = 4242;

    StringGuard a, b;
    gfj_front* fa = nullptr;
    gfj_front* fb = nullptr;
    REQUIRE(gfj_solve(e, &cfg, &fa) == GFJ_OK);
    REQUIRE(gfj_solve(e, &cfg, &fb) == GFJ_OK);
    REQUIRE(gfj_front_to_csv(fa, &a.s) == GFJ_OK);
    REQUIRE(gfj_front_to_csv(fb, &b.s) == GFJ_OK);
    CHECK(std::string(a.s) == std::string(b.s));

    gfj_front_free(fa);
    gfj_front_free(fb);
    gfj_enriched_free(e);
    gfj_profile_free(profile);
    gfj_instance_free(inst);
}
