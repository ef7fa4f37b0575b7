// greenfjsp command line: solve instances, ingest or synthesize market data,
// run the exact oracle, emit MILP text, and build trade-off reports.
// Talks to the solver exclusively through the C API (greenfjsp.h).
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "greenfjsp.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitLimit = 3;

struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void fail(gfj_status status) {
    throw CliError{status == GFJ_ERR_LIMIT ? kExitLimit : kExitValidation, gfj_last_error()};
}

void check(gfj_status status) {
    if (status != GFJ_OK) fail(status);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kExitValidation, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{kExitValidation, "cannot write " + path.string()};
    out << content;
}

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { gfj_string_free(s); }
    std::string str() const { return s ? s : ""; }
};

// Market source: a CSV file or synthetic generator parameters.
struct MarketSource {
    std::string market_path;
    bool synth = false;
    gfj_market_params params{};
};

struct SolveOptions {
    std::string instance_path;
    MarketSource market;
    double base_demand_kw = 500.0;
    int step_minutes = 15;
    gfj_solve_config config{};
    std::vector<double> deltas{5.0, 20.0, 50.0, 75.0};
    bool gantt_all = false;
};

gfj_profile* open_profile(const MarketSource& m, int step_minutes) {
    gfj_profile* profile = nullptr;
    if (m.synth) {
        gfj_market_params p = m.params;
        p.step_minutes = step_minutes;
        check(gfj_profile_generate(&p, &profile));
    } else {
        check(gfj_profile_load_csv(read_file(m.market_path).c_str(), step_minutes, &profile));
    }
    return profile;
}

gfj_axis parse_axis(const std::string& name) {
    if (name == "ms" || name == "makespan") return GFJ_AXIS_MAKESPAN;
    if (name == "ec" || name == "cost") return GFJ_AXIS_COST;
    if (name == "em" || name == "emissions") return GFJ_AXIS_EMISSIONS;
    throw CliError{kExitValidation, "unknown axis '" + name + "' (use ms|ec|em)"};
}

const char* axis_tag(gfj_axis a) {
    switch (a) {
        case GFJ_AXIS_MAKESPAN: return "ms";
        case GFJ_AXIS_COST: return "ec";
        case GFJ_AXIS_EMISSIONS: return "em";
    }
    return "?";
}

// Key=value config file; '#' starts a comment.
void apply_config_file(const std::string& path, SolveOptions& opt) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitValidation, "cannot open config file " + path};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw CliError{kExitValidation,
                               path + ":" + std::to_string(line_no) + ": expected key = value"};
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "population") opt.config.population_size = std::stoul(value);
            else if (key == "divisions") opt.config.divisions = std::stoi(value);
            else if (key == "crossover_rate") opt.config.crossover_rate = std::stod(value);
            else if (key == "mutation_rate") opt.config.mutation_rate = std::stod(value);
            else if (key == "generations") opt.config.generation_limit = std::stoul(value);
            else if (key == "time_limit_seconds") opt.config.runtime_limit_seconds = std::stod(value);
            else if (key == "seed") opt.config.seed = std::stoull(value);
            else if (key == "local_refinement") opt.config.local_refinement = value == "on" || value == "true" || value == "1";
            else if (key == "base_demand_kw") opt.base_demand_kw = std::stod(value);
            else if (key == "step_minutes") opt.step_minutes = std::stoi(value);
            else
                throw CliError{kExitValidation,
                               path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'"};
        } catch (const std::invalid_argument&) {
            throw CliError{kExitValidation,
                           path + ":" + std::to_string(line_no) + ": bad value for '" + key + "'"};
        }
    }
}

json manifest_of(const SolveOptions& opt, double wall_seconds, std::size_t front_size,
                 const std::vector<std::string>& outputs) {
    json market;
    if (opt.market.synth) {
        const auto& p = opt.market.params;
        market = {{"synth",
                   {{"seed", p.seed},
                    {"hours", p.hours},
                    {"price_mean", p.price_mean},
                    {"price_sd", p.price_sd},
                    {"emission_mean", p.emission_mean},
                    {"emission_sd", p.emission_sd},
                    {"correlation", p.correlation}}}};
    } else {
        market = {{"path", fs::absolute(opt.market.market_path).string()}};
    }
    return json{
        {"schema", "gfjsp-run-manifest/1"},
        {"command", "solve"},
        {"instance", {{"path", fs::absolute(opt.instance_path).string()}}},
        {"market", market},
        {"base_demand_kw", opt.base_demand_kw},
        {"step_minutes", opt.step_minutes},
        {"config",
         {{"population", opt.config.population_size},
          {"divisions", opt.config.divisions},
          {"crossover_rate", opt.config.crossover_rate},
          {"mutation_rate", opt.config.mutation_rate},
          {"generations", opt.config.generation_limit},
          {"time_limit_seconds", opt.config.runtime_limit_seconds},
          {"seed", opt.config.seed},
          {"local_refinement", opt.config.local_refinement != 0}}},
        {"deltas", opt.deltas},
        {"gantt_all", opt.gantt_all},
        {"front_size", front_size},
        {"wall_seconds", wall_seconds},
        {"outputs", outputs},
    };
}

SolveOptions options_from_manifest(const std::string& path) {
    json doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded() || doc.value("schema", "") != "gfjsp-run-manifest/1")
        throw CliError{kExitValidation, path + " is not a gfjsp run manifest"};
    SolveOptions opt;
    gfj_solve_config_init(&opt.config);
    opt.instance_path = doc["instance"]["path"].get<std::string>();
    if (doc["market"].contains("synth")) {
        opt.market.synth = true;
        gfj_market_params_init(&opt.market.params);
        const auto& s = doc["market"]["synth"];
        opt.market.params.seed = s["seed"].get<uint64_t>();
        opt.market.params.hours = s["hours"].get<int>();
        opt.market.params.price_mean = s["price_mean"].get<double>();
        opt.market.params.price_sd = s["price_sd"].get<double>();
        opt.market.params.emission_mean = s["emission_mean"].get<double>();
        opt.market.params.emission_sd = s["emission_sd"].get<double>();
        opt.market.params.correlation = s["correlation"].get<double>();
    } else {
        opt.market.market_path = doc["market"]["path"].get<std::string>();
    }
    opt.base_demand_kw = doc["base_demand_kw"].get<double>();
    opt.step_minutes = doc["step_minutes"].get<int>();
    const auto& c = doc["config"];
    opt.config.population_size = c["population"].get<std::size_t>();
    opt.config.divisions = c["divisions"].get<int>();
    opt.config.crossover_rate = c["crossover_rate"].get<double>();
    opt.config.mutation_rate = c["mutation_rate"].get<double>();
    opt.config.generation_limit = c["generations"].get<std::size_t>();
    opt.config.runtime_limit_seconds = c["time_limit_seconds"].get<double>();
    opt.config.seed = c["seed"].get<uint64_t>();
    opt.config.local_refinement = c["local_refinement"].get<bool>() ? 1 : 0;
    opt.deltas = doc["deltas"].get<std::vector<double>>();
    opt.gantt_all = doc.value("gantt_all", false);
    return opt;
}

int run_solve(const SolveOptions& opt, const std::string& out_dir) {
    fs::create_directories(out_dir);

    gfj_instance* instance = nullptr;
    check(gfj_instance_parse(read_file(opt.instance_path).c_str(), &instance));
    gfj_profile* profile = open_profile(opt.market, opt.step_minutes);
    gfj_enriched* enriched = nullptr;
    check(gfj_enriched_create(instance, profile, opt.base_demand_kw, &enriched));

    auto t0 = std::chrono::steady_clock::now();
    gfj_front* front = nullptr;
    check(gfj_solve(enriched, &opt.config, &front));
    std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;

    std::vector<std::string> outputs;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(fs::path(out_dir) / name, content);
        outputs.push_back(name);
    };

    OwnedString csv;
    check(gfj_front_to_csv(front, &csv.s));
    emit("front.csv", csv.str());

    OwnedString fjson;
    check(gfj_front_to_json(front, enriched, &fjson.s));
    emit("front.json", fjson.str());

    const std::size_t n = gfj_front_size(front);
    for (std::size_t i = 0; i < n; ++i) {
        OwnedString sched;
        check(gfj_front_schedule_json(front, i, enriched, &sched.s));
        char name[64];
        std::snprintf(name, sizeof(name), "schedule_%03zu.json", i);
        emit(name, sched.str());
    }
    const std::size_t gantt_count = opt.gantt_all ? n : std::min<std::size_t>(n, 1);
    for (std::size_t i = 0; i < gantt_count; ++i) {
        OwnedString gantt;
        check(gfj_front_gantt_json(front, i, enriched, &gantt.s));
        char name[64];
        std::snprintf(name, sizeof(name), "gantt_%03zu.json", i);
        emit(name, gantt.str());
    }

    const std::pair<gfj_axis, gfj_axis> analyses[] = {
        {GFJ_AXIS_MAKESPAN, GFJ_AXIS_COST},
        {GFJ_AXIS_MAKESPAN, GFJ_AXIS_EMISSIONS},
        {GFJ_AXIS_COST, GFJ_AXIS_EMISSIONS},
    };
    for (auto [a, b] : analyses) {
        OwnedString report;
        check(gfj_front_tradeoff_csv(front, a, b, opt.deltas.data(), opt.deltas.size(),
                                     &report.s));
        emit(std::string("tradeoff_") + axis_tag(a) + "_" + axis_tag(b) + ".csv", report.str());
    }

    write_file(fs::path(out_dir) / "manifest.json",
               manifest_of(opt, wall.count(), n, outputs).dump(2) + "\n");

    std::cout << "front size " << n << ", wall " << wall.count() << " s, outputs in " << out_dir
              << "\n";

    gfj_front_free(front);
    gfj_enriched_free(enriched);
    gfj_profile_free(profile);
    gfj_instance_free(instance);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"greenfjsp: energy-aware flexible job shop scheduling"};
    app.require_subcommand(1);

    // --- solve ---------------------------------------------------------------
    SolveOptions solve_opt;
    gfj_solve_config_init(&solve_opt.config);
    gfj_market_params_init(&solve_opt.market.params);
    std::string solve_out;
    std::string config_path;
    std::string from_manifest;
    bool no_refine = false;
    bool synth_seed_given = false;

    auto* solve = app.add_subcommand("solve", "Run the memetic NSGA-III on an instance");
    solve->add_option("instance", solve_opt.instance_path, "FJSP instance file");
    solve->add_option("--market", solve_opt.market.market_path, "market CSV file");
    solve
                           ->add_option_function<uint64_t>(
                               "--synth-seed",
                               [&](uint64_t v) {
                                   solve_opt.market.synth = true;
                                   solve_opt.market.params.seed = v;
                                   synth_seed_given = true;
                               },
                               "generate a synthetic market with this seed")
        ->type_name("UINT");
    solve->add_option("--synth-hours", solve_opt.market.params.hours, "synthetic market length");
    solve->add_option("--synth-correlation", solve_opt.market.params.correlation,
                      "price/emission correlation of the synthetic market");
    solve->add_option("--config", config_path, "key=value config file");
    solve->add_option("--seed", solve_opt.config.seed, "RNG seed");
    solve->add_option("--generations", solve_opt.config.generation_limit, "generation limit");
    solve->add_option("--time-limit", solve_opt.config.runtime_limit_seconds,
                      "wall clock limit in seconds (0 = off)");
    solve->add_option("--population", solve_opt.config.population_size,
                      "population size (multiple of 4)");
    solve->add_option("--divisions", solve_opt.config.divisions, "reference point divisions");
    solve->add_option("--crossover-rate", solve_opt.config.crossover_rate, "crossover rate");
    solve->add_option("--mutation-rate", solve_opt.config.mutation_rate, "mutation rate");
    solve->add_flag("--no-refine", no_refine, "disable the memetic local refinement");
    solve->add_option("--base-demand", solve_opt.base_demand_kw, "base power demand in kW");
    solve->add_option("--step-minutes", solve_opt.step_minutes, "time step length in minutes");
    solve->add_option("--deltas", solve_opt.deltas, "trade-off increase percentages");
    solve->add_flag("--gantt-all", solve_opt.gantt_all, "write Gantt JSON for every front member");
    solve->add_option("--from-manifest", from_manifest, "re-run a recorded solve");
    solve->add_option("--out", solve_out, "output directory")->required();

    // --- analyze -------------------------------------------------------------
    std::string analyze_front;
    std::string analyze_a = "ms";
    std::string analyze_b = "ec";
    std::vector<double> analyze_deltas{5.0, 20.0, 50.0, 75.0};
    std::string analyze_out;
    auto* analyze = app.add_subcommand("analyze", "Trade-off table from an exported front");
    analyze->add_option("front", analyze_front, "front.json from a solve run")->required();
    analyze->add_option("--axis-a", analyze_a, "increased axis: ms|ec|em");
    analyze->add_option("--axis-b", analyze_b, "saved axis: ms|ec|em");
    analyze->add_option("--deltas", analyze_deltas, "increase percentages");
    analyze->add_option("--out", analyze_out, "write CSV here instead of stdout");

    // --- oracle --------------------------------------------------------------
    std::string oracle_instance;
    MarketSource oracle_market;
    gfj_market_params_init(&oracle_market.params);
    std::size_t oracle_max_ops = 6;
    std::size_t oracle_max_horizon = 24;
    double oracle_demand = 500.0;
    int oracle_step = 15;
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle", "Exact Pareto front of a tiny instance");
    oracle->add_option("instance", oracle_instance, "FJSP instance file")->required();
    oracle->add_option("--market", oracle_market.market_path, "market CSV file");
    oracle->add_option_function<uint64_t>(
        "--synth-seed",
        [&](uint64_t v) {
            oracle_market.synth = true;
            oracle_market.params.seed = v;
        },
        "generate a synthetic market with this seed");
    oracle->add_option("--synth-hours", oracle_market.params.hours, "synthetic market length");
    oracle->add_option("--max-ops", oracle_max_ops, "operation count guard");
    oracle->add_option("--max-horizon", oracle_max_horizon, "time step guard");
    oracle->add_option("--base-demand", oracle_demand, "base power demand in kW");
    oracle->add_option("--step-minutes", oracle_step, "time step length in minutes");
    oracle->add_option("--out", oracle_out, "write front CSV here instead of stdout");

    // --- emit-milp -----------------------------------------------------------
    std::string milp_instance;
    MarketSource milp_market;
    gfj_market_params_init(&milp_market.params);
    std::string milp_objective = "ms";
    std::optional<double> eps_ms, eps_ec, eps_em;
    double milp_demand = 500.0;
    int milp_step = 15;
    std::string milp_out;
    auto* milp = app.add_subcommand("emit-milp", "Emit the scheduling MILP as LP text");
    milp->add_option("instance", milp_instance, "FJSP instance file")->required();
    milp->add_option("--market", milp_market.market_path, "market CSV file");
    milp->add_option_function<uint64_t>(
        "--synth-seed",
        [&](uint64_t v) {
            milp_market.synth = true;
            milp_market.params.seed = v;
        },
        "generate a synthetic market with this seed");
    milp->add_option("--synth-hours", milp_market.params.hours, "synthetic market length");
    milp->add_option("--objective", milp_objective, "ms|ec|em");
    milp->add_option_function<double>("--eps-ms", [&](double v) { eps_ms = v; },
                                      "epsilon bound on makespan");
    milp->add_option_function<double>("--eps-ec", [&](double v) { eps_ec = v; },
                                      "epsilon bound on energy cost");
    milp->add_option_function<double>("--eps-em", [&](double v) { eps_em = v; },
                                      "epsilon bound on emissions");
    milp->add_option("--base-demand", milp_demand, "base power demand in kW");
    milp->add_option("--step-minutes", milp_step, "time step length in minutes");
    milp->add_option("--out", milp_out, "write LP text here instead of stdout");

    // --- gen-market ----------------------------------------------------------
    gfj_market_params gen_params;
    gfj_market_params_init(&gen_params);
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-market", "Generate a synthetic market CSV");
    gen->add_option("--seed", gen_params.seed, "RNG seed");
    gen->add_option("--hours", gen_params.hours, "number of hourly rows");
    gen->add_option("--correlation", gen_params.correlation, "price/emission correlation");
    gen->add_option("--price-mean", gen_params.price_mean, "mean price in EUR/MWh");
    gen->add_option("--price-sd", gen_params.price_sd, "price standard deviation");
    gen->add_option("--emission-mean", gen_params.emission_mean, "mean emission factor in g/kWh");
    gen->add_option("--emission-sd", gen_params.emission_sd, "emission standard deviation");
    gen->add_option("--out", gen_out, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (solve->parsed()) {
            SolveOptions opt;
            if (!from_manifest.empty()) {
                opt = options_from_manifest(from_manifest);
            } else {
                if (!config_path.empty()) {
                    // Config file first, then every flag the user actually
                    // passed wins over it.
                    SolveOptions flags = solve_opt;
                    apply_config_file(config_path, solve_opt);
                    auto given = [&](const char* name) { return solve->count(name) > 0; };
                    if (given("--seed")) solve_opt.config.seed = flags.config.seed;
                    if (given("--generations"))
                        solve_opt.config.generation_limit = flags.config.generation_limit;
                    if (given("--time-limit"))
                        solve_opt.config.runtime_limit_seconds = flags.config.runtime_limit_seconds;
                    if (given("--population"))
                        solve_opt.config.population_size = flags.config.population_size;
                    if (given("--divisions")) solve_opt.config.divisions = flags.config.divisions;
                    if (given("--crossover-rate"))
                        solve_opt.config.crossover_rate = flags.config.crossover_rate;
                    if (given("--mutation-rate"))
                        solve_opt.config.mutation_rate = flags.config.mutation_rate;
                    if (given("--base-demand")) solve_opt.base_demand_kw = flags.base_demand_kw;
                    if (given("--step-minutes")) solve_opt.step_minutes = flags.step_minutes;
                }
                opt = solve_opt;
                if (opt.instance_path.empty())
                    throw CliError{kExitValidation, "instance file is required"};
                if (opt.market.market_path.empty() && !opt.market.synth)
                    throw CliError{kExitValidation, "one of --market or --synth-seed is required"};
                if (!opt.market.market_path.empty() && synth_seed_given)
                    throw CliError{kExitValidation, "--market and --synth-seed are exclusive"};
                if (no_refine) opt.config.local_refinement = 0;
            }
            return run_solve(opt, solve_out);
        }
        if (analyze->parsed()) {
            OwnedString report;
            check(gfj_tradeoff_csv_from_front_json(read_file(analyze_front).c_str(),
                                                   parse_axis(analyze_a), parse_axis(analyze_b),
                                                   analyze_deltas.data(), analyze_deltas.size(),
                                                   &report.s));
            if (analyze_out.empty())
                std::cout << report.str();
            else
                write_file(analyze_out, report.str());
            return kExitOk;
        }
        if (oracle->parsed()) {
            if (oracle_market.market_path.empty() && !oracle_market.synth)
                throw CliError{kExitValidation, "one of --market or --synth-seed is required"};
            gfj_instance* instance = nullptr;
            check(gfj_instance_parse(read_file(oracle_instance).c_str(), &instance));
            gfj_profile* profile = open_profile(oracle_market, oracle_step);
            gfj_enriched* enriched = nullptr;
            check(gfj_enriched_create(instance, profile, oracle_demand, &enriched));
            gfj_front* front = nullptr;
            check(gfj_oracle(enriched, oracle_max_ops, oracle_max_horizon, &front));
            OwnedString csv;
            check(gfj_front_to_csv(front, &csv.s));
            if (oracle_out.empty())
                std::cout << csv.str();
            else
                write_file(oracle_out, csv.str());
            gfj_front_free(front);
            gfj_enriched_free(enriched);
            gfj_profile_free(profile);
            gfj_instance_free(instance);
            return kExitOk;
        }
        if (milp->parsed()) {
            if (milp_market.market_path.empty() && !milp_market.synth)
                throw CliError{kExitValidation, "one of --market or --synth-seed is required"};
            gfj_milp_objective objective;
            if (milp_objective == "ms") objective = GFJ_MILP_MAKESPAN;
            else if (milp_objective == "ec") objective = GFJ_MILP_COST;
            else if (milp_objective == "em") objective = GFJ_MILP_EMISSIONS;
            else throw CliError{kExitValidation, "unknown objective (use ms|ec|em)"};
            gfj_instance* instance = nullptr;
            check(gfj_instance_parse(read_file(milp_instance).c_str(), &instance));
            gfj_profile* profile = open_profile(milp_market, milp_step);
            gfj_enriched* enriched = nullptr;
            check(gfj_enriched_create(instance, profile, milp_demand, &enriched));
            OwnedString lp;
            check(gfj_emit_milp(enriched, objective, eps_ms ? &*eps_ms : nullptr,
                                eps_ec ? &*eps_ec : nullptr, eps_em ? &*eps_em : nullptr, &lp.s));
            if (milp_out.empty())
                std::cout << lp.str();
            else
                write_file(milp_out, lp.str());
            gfj_enriched_free(enriched);
            gfj_profile_free(profile);
            gfj_instance_free(instance);
            return kExitOk;
        }
        if (gen->parsed()) {
            OwnedString csv;
            check(gfj_market_csv_generate(&gen_params, &csv.s));
            if (gen_out.empty())
                std::cout << csv.str();
            else
                write_file(gen_out, csv.str());
            return kExitOk;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
