#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "gfjsp/energy.hpp"
#include "gfjsp/error.hpp"
#include "gfjsp/instance.hpp"
#include "helpers.hpp"

using namespace gfjsp;
using namespace testutil;

TEST_CASE("parse_instance reads the mk01-shaped file") {
    Instance inst = parse_instance(read_file(data_path("mk01.fjs")));
    CHECK(inst.job_count() == 10);
    CHECK(inst.machine_count() == 6);
    CHECK(inst.total_operations() == 55);
}

TEST_CASE("parse_instance reads the mk08-shaped file") {
    Instance inst = parse_instance(read_file(data_path("mk08.fjs")));
    CHECK(inst.job_count() == 20);
    CHECK(inst.machine_count() == 10);
    CHECK(inst.total_operations() == 225);
}

TEST_CASE("parse_instance accepts the smallest legal instance") {
    Instance inst = parse_instance("1 1\n1 1 1 2\n");
    CHECK(inst.job_count() == 1);
    CHECK(inst.total_operations() == 1);
    const auto& op = inst.operation(1, 1);
    REQUIRE(op.options.size() == 1);
    CHECK(op.options[0].machine == 1);
    CHECK(op.options[0].duration == 2);
}

TEST_CASE("parse_instance errors carry line numbers") {
    SUBCASE("malformed header") {
        CHECK_THROWS_WITH_AS(parse_instance("x 6\n"), doctest::Contains("line 1"), Error);
    }
    SUBCASE("machine index out of range") {
        try {
            parse_instance("1 1\n1 1 2 2\n");
            FAIL("expected a parse error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
            CHECK(std::string(e.what()).find("out of range") != std::string::npos);
        }
    }
    SUBCASE("truncated body") {
        try {
            parse_instance("2 2\n1 1 1 2\n");
            FAIL("expected a parse error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
    }
    SUBCASE("trailing data") {
        CHECK_THROWS_AS(parse_instance("1 1\n1 1 1 2\n7\n"), Error);
    }
}

TEST_CASE("parse then re-serialize preserves all counts") {
    for (const char* name : {"mk01.fjs", "mk02.fjs", "mk03.fjs", "mk04.fjs"}) {
        Instance a = parse_instance(read_file(data_path(name)));
        Instance b = parse_instance(serialize_instance(a));
        REQUIRE(a.job_count() == b.job_count());
        REQUIRE(a.machine_count() == b.machine_count());
        REQUIRE(a.total_operations() == b.total_operations());
        for (std::size_t f = 0; f < a.total_operations(); ++f)
            CHECK(a.operation(f).options.size() == b.operation(f).options.size());
    }
}

namespace {

std::string hourly_csv(const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream out;
    out << "timestamp,price_eur_mwh,emission_g_per_kwh\n";
    int h = 0;
    for (auto& [p, e] : rows) {
        char line[96];
        std::snprintf(line, sizeof(line), "2022-02-%02dT%02d:00:00Z,%.17g,%.17g\n", 1 + h / 24,
                      h % 24, p, e);
        out << line;
        ++h;
    }
    return out.str();
}

} // namespace

TEST_CASE("load_energy_profile replicates hourly values per step") {
    EnergyProfile p = load_energy_profile(hourly_csv({{50.0, 300.0}, {60.0, 400.0}}), 15);
    REQUIRE(p.size() == 8);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(p.price()[i] == 50.0);
        CHECK(p.emission()[i] == 300.0);
    }
    for (std::size_t i = 4; i < 8; ++i) CHECK(p.price()[i] == 60.0);
}

TEST_CASE("load_energy_profile constant day") {
    std::vector<std::pair<double, double>> rows(24, {50.0, 100.0});
    EnergyProfile p = load_energy_profile(hourly_csv(rows), 15);
    REQUIRE(p.size() == 96);
    for (double v : p.price()) CHECK(v == 50.0);
}

TEST_CASE("load_energy_profile ingestion errors name the row") {
    SUBCASE("non-monotone timestamps") {
        std::string csv =
            "timestamp,price_eur_mwh,emission_g_per_kwh\n"
            "2022-02-01T00:00:00Z,50,300\n"
            "2022-02-01T02:00:00Z,50,300\n";
        try {
            load_energy_profile(csv, 15);
            FAIL("expected ingestion error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("row 3") != std::string::npos);
        }
    }
    SUBCASE("missing column") {
        CHECK_THROWS_WITH_AS(load_energy_profile("timestamp,price_eur_mwh\n", 15),
                             doctest::Contains("emission_g_per_kwh"), Error);
    }
    SUBCASE("non-numeric cell") {
        std::string csv =
            "timestamp,price_eur_mwh,emission_g_per_kwh\n"
            "2022-02-01T00:00:00Z,abc,300\n";
        try {
            load_energy_profile(csv, 15);
            FAIL("expected ingestion error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        }
    }
}

TEST_CASE("hourly-to-step replication property on random CSVs") {
    Rng rng(11);
    std::uniform_int_distribution<int> hours_d(1, 40);
    std::uniform_real_distribution<double> price_d(-50.0, 200.0);
    std::uniform_real_distribution<double> em_d(0.0, 600.0);
    std::uniform_int_distribution<int> step_pick(0, 3);
    const int steps[] = {5, 10, 15, 30};
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::pair<double, double>> rows;
        int hours = hours_d(rng);
        for (int h = 0; h < hours; ++h) rows.push_back({price_d(rng), em_d(rng)});
        int step = steps[step_pick(rng)];
        EnergyProfile p = load_energy_profile(hourly_csv(rows), step);
        std::size_t repeat = static_cast<std::size_t>(60 / step);
        REQUIRE(p.size() == repeat * static_cast<std::size_t>(hours));
        for (std::size_t h = 0; h < static_cast<std::size_t>(hours); ++h) {
            for (std::size_t r = 0; r < repeat; ++r) {
                CHECK(p.price()[h * repeat + r] == rows[h].first);
                CHECK(p.emission()[h * repeat + r] == rows[h].second);
            }
        }
    }
}

TEST_CASE("synthetic profile is deterministic per seed") {
    SyntheticMarketParams params;
    params.seed = 7;
    params.hours = 100;
    EnergyProfile a = generate_synthetic_profile(params);
    EnergyProfile b = generate_synthetic_profile(params);
    CHECK(a.price() == b.price());
    CHECK(a.emission() == b.emission());
}

TEST_CASE("synthetic profile with correlation 1 is perfectly correlated") {
    SyntheticMarketParams params;
    params.seed = 3;
    params.hours = 500;
    params.correlation = 1.0;
    params.emission_mean = 4000.0; // keep the zero clamp out of play
    params.emission_sd = 100.0;
    EnergyProfile p = generate_synthetic_profile(params);
    CHECK(price_emission_correlation(p) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("synthetic profile hits the requested correlation on long runs") {
    SyntheticMarketParams params;
    params.seed = 7;
    params.hours = 2000;
    params.correlation = 0.72;
    EnergyProfile p = generate_synthetic_profile(params);
    double r = price_emission_correlation(p);
    CHECK(r > 0.62);
    CHECK(r < 0.82);
}

TEST_CASE("synthetic profile clamps emissions at zero and rejects bad correlation") {
    SyntheticMarketParams params;
    params.seed = 9;
    params.hours = 300;
    params.emission_mean = 10.0;
    params.emission_sd = 200.0;
    EnergyProfile p = generate_synthetic_profile(params);
    for (double e : p.emission()) CHECK(e >= 0.0);

    params.correlation = 1.5;
    CHECK_THROWS_AS(generate_synthetic_profile(params), Error);
}

TEST_CASE("enrich computes job power demands") {
    SUBCASE("ten jobs") {
        Instance inst = parse_instance(read_file(data_path("mk01.fjs")));
        EnrichedInstance e = enrich(inst, constant_profile(96, 50.0, 100.0), 500.0);
        CHECK(e.demand_kw(10) == 500.0);
        CHECK(e.demand_kw(1) == 50.0);
    }
    SUBCASE("single job") {
        Instance inst = parse_instance("1 1\n1 1 1 2\n");
        EnrichedInstance e = enrich(inst, constant_profile(8, 50.0, 100.0), 500.0);
        CHECK(e.demand_kw(1) == 500.0);
    }
    SUBCASE("mk03 job 6") {
        Instance inst = parse_instance(read_file(data_path("mk03.fjs")));
        REQUIRE(inst.job_count() == 15);
        EnrichedInstance e = enrich(inst, constant_profile(96, 50.0, 100.0), 500.0);
        CHECK(e.demand_kw(6) == 200.0);
    }
    SUBCASE("invalid base demand") {
        Instance inst = parse_instance("1 1\n1 1 1 2\n");
        CHECK_THROWS_AS(enrich(inst, constant_profile(8, 50.0, 100.0), 0.0), Error);
    }
}

TEST_CASE("op_cost unit arithmetic") {
    SUBCASE("constant price 100, demand 500, two steps = 25 EUR") {
        Instance inst = parse_instance("1 1\n1 1 1 2\n");
        EnrichedInstance e = enrich(inst, constant_profile(8, 100.0, 0.0), 500.0);
        StepCost c = op_cost(e, 1, 1, 1, 0);
        CHECK(c.cost_eur == doctest::Approx(25.0).epsilon(1e-12));
        CHECK(c.emissions_g == 0.0);
    }
    SUBCASE("negative prices net against positive") {
        Instance inst = parse_instance("1 1\n1 1 1 2\n");
        EnrichedInstance e =
            enrich(inst, make_profile({-10.0, 40.0}, {0.0, 0.0}), 200.0);
        StepCost c = op_cost(e, 1, 1, 1, 0);
        CHECK(c.cost_eur == doctest::Approx(1.5).epsilon(1e-12));
    }
    SUBCASE("horizon overrun") {
        Instance inst = parse_instance("1 1\n1 1 1 2\n");
        EnrichedInstance e = enrich(inst, constant_profile(8, 100.0, 0.0), 500.0);
        CHECK_THROWS_AS(op_cost(e, 1, 1, 1, 7), Error);
    }
    SUBCASE("ineligible machine") {
        Instance inst = parse_instance("1 2\n1 1 1 2\n");
        EnrichedInstance e = enrich(inst, constant_profile(8, 100.0, 0.0), 500.0);
        CHECK_THROWS_AS(op_cost(e, 1, 1, 2, 0), Error);
    }
}

TEST_CASE("op_cost additivity and demand linearity") {
    Rng rng(21);
    std::uniform_real_distribution<double> price_d(-100.0, 300.0);
    std::uniform_real_distribution<double> em_d(0.0, 800.0);
    std::uniform_int_distribution<int> tau_d(2, 6);
    std::uniform_real_distribution<double> base_d(10.0, 900.0);
    for (int trial = 0; trial < 1000; ++trial) {
        int tau = tau_d(rng);
        std::size_t horizon = 24;
        std::vector<double> price(horizon), emission(horizon);
        for (std::size_t t = 0; t < horizon; ++t) {
            price[t] = price_d(rng);
            emission[t] = em_d(rng);
        }
        std::string text = "1 1\n1 1 1 " + std::to_string(tau) + "\n";
        double base = base_d(rng);
        EnrichedInstance e = enrich(parse_instance(text), make_profile(price, emission), base);
        std::uniform_int_distribution<std::size_t> t_d(0, horizon - static_cast<std::size_t>(tau));
        std::size_t t = t_d(rng);

        StepCost whole = op_cost(e, 1, 1, 1, t);

        std::uniform_int_distribution<int> split_d(1, tau - 1);
        int tau1 = split_d(rng);
        StepCost head = op_cost_tiled(e, 1, tau1, t, e.horizon());
        StepCost tail = op_cost_tiled(e, 1, tau - tau1, t + static_cast<std::size_t>(tau1),
                                      e.horizon());
        CHECK(whole.cost_eur ==
              doctest::Approx(head.cost_eur + tail.cost_eur).epsilon(1e-9));
        CHECK(whole.emissions_g ==
              doctest::Approx(head.emissions_g + tail.emissions_g).epsilon(1e-9));

        EnrichedInstance doubled =
            enrich(parse_instance(text), make_profile(price, emission), 2.0 * base);
        StepCost twice = op_cost(doubled, 1, 1, 1, t);
        CHECK(twice.cost_eur == doctest::Approx(2.0 * whole.cost_eur).epsilon(1e-9));
        CHECK(twice.emissions_g == doctest::Approx(2.0 * whole.emissions_g).epsilon(1e-9));
    }
}

TEST_CASE("price_emission_correlation") {
    SUBCASE("identical series") {
        EnergyProfile p = make_profile({1.0, 2.0, 5.0, 3.0}, {1.0, 2.0, 5.0, 3.0});
        CHECK(price_emission_correlation(p) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("negated series") {
        CHECK(pearson({1.0, 2.0, 5.0, 3.0}, {-1.0, -2.0, -5.0, -3.0}) ==
              doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("zero variance") {
        EnergyProfile p = make_profile({1.0, 1.0}, {2.0, 3.0});
        CHECK_THROWS_AS(price_emission_correlation(p), Error);
    }
}

TEST_CASE("SMARD extract correlation (runs only when the dataset is supplied)") {
    const char* path = std::getenv("GFJSP_SMARD_CSV");
    if (!path) {
        MESSAGE("GFJSP_SMARD_CSV not set; skipping the real-data correlation check");
        return;
    }
    EnergyProfile p = load_energy_profile(read_file(path), 15);
    MESSAGE("steps: ", p.size());
    double r = price_emission_correlation(p);
    CHECK(r == doctest::Approx(0.72).epsilon(0.015));
}
