#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gfjsp/decode.hpp"
#include "gfjsp/refine.hpp"
#include "helpers.hpp"

using namespace gfjsp;
using namespace testutil;

namespace {

// All legal starts of one operation by exhaustive shifting: the move must keep
// the schedule valid, keep every end within the makespan cap, and preserve the
// per-machine operation order. Written against validate_schedule, not against
// the window computation it checks.
std::vector<std::size_t> legal_shifts(const Schedule& s, const EnrichedInstance& e,
                                      std::size_t flat, std::size_t makespan_cap) {
    std::vector<std::size_t> legal;
    const OpPlacement& p = s.placements[flat];
    const std::size_t tau = p.end - p.start;

    std::vector<std::pair<int, std::vector<int>>> order_before; // machine -> flat op order
    auto machine_order = [&](const Schedule& sched) {
        std::vector<std::vector<std::size_t>> per(static_cast<std::size_t>(
            e.instance().machine_count() + 1));
        for (std::size_t i = 0; i < sched.placements.size(); ++i)
            per[static_cast<std::size_t>(sched.placements[i].machine)].push_back(i);
        for (auto& ops : per)
            std::sort(ops.begin(), ops.end(), [&](std::size_t a, std::size_t b) {
                return sched.placements[a].start < sched.placements[b].start ||
                       (sched.placements[a].start == sched.placements[b].start && a < b);
            });
        return per;
    };
    auto base_order = machine_order(s);

    for (std::size_t t = 0; t + tau <= makespan_cap; ++t) {
        Schedule moved = s;
        moved.placements[flat].start = t;
        moved.placements[flat].end = t + tau;
        if (!validate_schedule(moved, e).empty()) continue;
        if (moved.makespan() > makespan_cap) continue;
        if (machine_order(moved) != base_order) continue;
        legal.push_back(t);
    }
    return legal;
}

Schedule random_schedule(Rng& rng, const EnrichedInstance& e) {
    Genotype g = random_genotype(e, rng);
    return decode(g, e, RelaxMode::ExtendHorizon);
}

} // namespace

TEST_CASE("feasible_window of a lone operation spans the whole makespan") {
    EnrichedInstance e = enrich(parse_instance("1 1\n1 1 1 2\n"), constant_profile(8, 10.0, 5.0));
    Schedule s;
    s.horizon_used = 8;
    s.placements = {{1, 1, 1, 3, 5}};
    StartWindow w = feasible_window(s, e, 1, 1);
    CHECK(w.lower == 0);
    CHECK(w.upper == 3); // makespan 5 minus tau 2
}

TEST_CASE("feasible_window collapses for a chain filling the horizon") {
    EnrichedInstance e = enrich(parse_instance("1 1\n2 1 1 2 1 1 2\n"),
                                constant_profile(4, 10.0, 5.0));
    Schedule s;
    s.horizon_used = 4;
    s.placements = {{1, 1, 1, 0, 2}, {1, 2, 1, 2, 4}};
    StartWindow w1 = feasible_window(s, e, 1, 1);
    StartWindow w2 = feasible_window(s, e, 1, 2);
    CHECK(w1.lower == 0);
    CHECK(w1.upper == 0);
    CHECK(w2.lower == 2);
    CHECK(w2.upper == 2);
}

TEST_CASE("feasible_window matches the exhaustive shift-legality oracle") {
    SUBCASE("crafted three-operation schedule") {
        EnrichedInstance e = enrich(parse_instance("2 2\n2 1 1 2 1 1 1\n1 1 1 2\n"),
                                    constant_profile(12, 10.0, 5.0));
        Schedule s;
        s.horizon_used = 12;
        s.placements = {{1, 1, 1, 0, 2}, {1, 2, 1, 5, 6}, {2, 1, 1, 2, 4}};
        for (const auto& p : s.placements) {
            StartWindow w =
                feasible_window(s, e, p.job, p.position, s.makespan());
            auto legal = legal_shifts(s, e, e.instance().flat_index(p.job, p.position),
                                      s.makespan());
            REQUIRE_FALSE(legal.empty());
            CHECK(w.lower == legal.front());
            CHECK(w.upper == legal.back());
            CHECK(w.upper - w.lower + 1 == legal.size()); // contiguous
        }
    }
    SUBCASE("random schedules") {
        Rng rng(5);
        for (int trial = 0; trial < 40; ++trial) {
            TinyInstanceParams params;
            params.max_duration = 3;
            params.horizon = 14;
            EnrichedInstance e = random_tiny(rng, params);
            Schedule s = random_schedule(rng, e);
            for (const auto& p : s.placements) {
                std::size_t flat = e.instance().flat_index(p.job, p.position);
                StartWindow w = feasible_window(s, e, p.job, p.position, s.makespan());
                auto legal = legal_shifts(s, e, flat, s.makespan());
                CHECK(w.lower == legal.front());
                CHECK(w.upper == legal.back());
                CHECK(w.upper - w.lower + 1 == legal.size());
            }
        }
    }
}

TEST_CASE("refinement queue is sorted by energy consumption descending") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        EnrichedInstance e = random_tiny(rng);
        Schedule s = random_schedule(rng, e);
        auto queue = refinement_queue(s, e);
        REQUIRE(queue.size() == s.placements.size());
        for (std::size_t i = 1; i < queue.size(); ++i) {
            const auto& prev = s.placements[queue[i - 1]];
            const auto& cur = s.placements[queue[i]];
            double kp = e.op_kwh(prev.job, static_cast<int>(prev.end - prev.start));
            double kc = e.op_kwh(cur.job, static_cast<int>(cur.end - cur.start));
            CHECK(kp >= kc);
        }
    }
}

TEST_CASE("refinement on a constant profile keeps decode-produced schedules put") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        TinyInstanceParams params;
        EnrichedInstance raw = random_tiny(rng, params);
        EnrichedInstance e(raw.instance(), constant_profile(raw.horizon(), 80.0, 200.0));
        Schedule s = random_schedule(rng, e);
        ObjectiveVector before = evaluate(s, e);
        RefineResult r = local_refine(s, e);
        CHECK(evaluate(r.cost_child, e) == before);
        CHECK(evaluate(r.emission_child, e) == before);
    }
}

TEST_CASE("refinement moves a lone operation to the cheapest in-window start") {
    EnrichedInstance e = enrich(parse_instance("1 1\n1 1 1 1\n"),
                                make_profile({5, 4, 3, 1, 2, 9, 9, 9}, {1, 1, 1, 1, 1, 1, 1, 1}));
    Schedule s;
    s.horizon_used = 8;
    s.placements = {{1, 1, 1, 4, 5}}; // window (0, 4), price cheapest at step 3
    RefineResult r = local_refine(s, e);
    CHECK(r.cost_child.placements[0].start == 3);
    CHECK(r.cost_child.makespan() <= s.makespan());
}

TEST_CASE("refinement trajectory equals the exhaustive per-step argmin oracle") {
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        TinyInstanceParams params;
        params.max_duration = 3;
        params.horizon = 14;
        EnrichedInstance e = random_tiny(rng, params);
        Schedule parent = random_schedule(rng, e);
        const std::size_t cap = parent.makespan();
        auto queue = refinement_queue(parent, e);

        for (bool cost_target : {true, false}) {
            Schedule oracle = parent;
            const std::size_t horizon = std::max(parent.horizon_used, e.horizon());
            for (std::size_t flat : queue) {
                auto legal = legal_shifts(oracle, e, flat, cap);
                REQUIRE_FALSE(legal.empty());
                std::size_t best_t = legal.front();
                double best_v = std::numeric_limits<double>::infinity();
                const auto& p = oracle.placements[flat];
                for (std::size_t t : legal) {
                    StepCost c =
                        op_cost_tiled(e, p.job, static_cast<int>(p.end - p.start), t, horizon);
                    double v = cost_target ? c.cost_eur : c.emissions_g;
                    if (v < best_v) {
                        best_v = v;
                        best_t = t;
                    }
                }
                oracle.placements[flat].end = best_t + (p.end - p.start);
                oracle.placements[flat].start = best_t;
            }
            RefineResult r = local_refine(parent, e);
            const Schedule& impl = cost_target ? r.cost_child : r.emission_child;
            for (std::size_t i = 0; i < impl.placements.size(); ++i)
                CHECK(impl.placements[i].start == oracle.placements[i].start);
        }
    }
}

TEST_CASE("refinement contracts: makespan and targeted objectives never worsen") {
    Rng rng(2024);
    std::vector<EnrichedInstance> instances;
    for (const char* name : {"mk01.fjs", "mk02.fjs"}) {
        SyntheticMarketParams sp;
        sp.seed = 5;
        sp.hours = 96;
        instances.push_back(
            enrich(parse_instance(read_file(data_path(name))), generate_synthetic_profile(sp)));
    }
    for (int trial = 0; trial < 30; ++trial) {
        const EnrichedInstance& e = instances[static_cast<std::size_t>(trial) % instances.size()];
        Schedule parent = random_schedule(rng, e);
        ObjectiveVector before = evaluate(parent, e);
        RefineResult r = local_refine(parent, e);
        ObjectiveVector cost_child = evaluate(r.cost_child, e);
        ObjectiveVector em_child = evaluate(r.emission_child, e);
        CHECK(cost_child.makespan <= before.makespan);
        CHECK(em_child.makespan <= before.makespan);
        CHECK(cost_child.energy_cost_eur <= before.energy_cost_eur);
        CHECK(em_child.emissions_g <= before.emissions_g);
        CHECK(validate_schedule(r.cost_child, e).empty());
        CHECK(validate_schedule(r.emission_child, e).empty());
    }
}
