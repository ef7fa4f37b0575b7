#ifndef GFJSP_TEST_HELPERS_HPP
#define GFJSP_TEST_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gfjsp/brute_force.hpp"
#include "gfjsp/decode.hpp"
#include "gfjsp/enriched.hpp"
#include "gfjsp/genotype.hpp"
#include "gfjsp/pareto.hpp"
#include "gfjsp/schedule.hpp"

namespace testutil {

using namespace gfjsp;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(GFJSP_DATA_DIR) + "/" + name;
}

// options: per job, per operation, list of (machine, duration).
inline Instance make_instance(int machines,
                              std::vector<std::vector<std::vector<std::pair<int, int>>>> jobs) {
    std::vector<Job> out;
    int ji = 1;
    for (auto& ops : jobs) {
        Job job;
        job.index = ji++;
        int pos = 1;
        for (auto& opts : ops) {
            OperationSpec spec;
            spec.job = job.index;
            spec.position = pos++;
            for (auto& [m, d] : opts) spec.options.push_back({m, d});
            job.operations.push_back(std::move(spec));
        }
        out.push_back(std::move(job));
    }
    return Instance(std::move(out), machines);
}

inline EnergyProfile make_profile(std::vector<double> price, std::vector<double> emission,
                                  int step_minutes = 15) {
    return EnergyProfile(step_minutes, std::move(price), std::move(emission));
}

inline EnergyProfile constant_profile(std::size_t steps, double price, double emission,
                                      int step_minutes = 15) {
    return make_profile(std::vector<double>(steps, price), std::vector<double>(steps, emission),
                        step_minutes);
}

struct TinyInstanceParams {
    int max_jobs = 2;
    int max_ops_per_job = 3;
    int machines = 2;
    std::size_t horizon = 16;
    int max_duration = 2;
    double price_lo = -20.0;
    double price_hi = 120.0;
    double emission_hi = 500.0;
    // 0 draws every step independently; a positive value draws each series
    // from a random palette of that many levels, which keeps exact fronts
    // small enough for a population to hold them in full.
    int palette = 0;
};

// Random tiny instance with a random profile, sized for the exact oracle.
inline EnrichedInstance random_tiny(Rng& rng, const TinyInstanceParams& p = {}) {
    std::uniform_int_distribution<int> jobs_d(1, p.max_jobs);
    std::uniform_int_distribution<int> ops_d(1, p.max_ops_per_job);
    std::uniform_int_distribution<int> dur_d(1, p.max_duration);
    std::uniform_int_distribution<int> nopt_d(1, p.machines);
    std::uniform_real_distribution<double> price_d(p.price_lo, p.price_hi);
    std::uniform_real_distribution<double> em_d(0.0, p.emission_hi);

    std::vector<std::vector<std::vector<std::pair<int, int>>>> jobs;
    int n_jobs = jobs_d(rng);
    for (int j = 0; j < n_jobs; ++j) {
        std::vector<std::vector<std::pair<int, int>>> ops;
        int n_ops = ops_d(rng);
        for (int o = 0; o < n_ops; ++o) {
            int n_opt = nopt_d(rng);
            std::vector<int> machines(static_cast<std::size_t>(p.machines));
            std::iota(machines.begin(), machines.end(), 1);
            std::shuffle(machines.begin(), machines.end(), rng);
            std::vector<std::pair<int, int>> opts;
            for (int k = 0; k < n_opt; ++k) opts.push_back({machines[static_cast<std::size_t>(k)], dur_d(rng)});
            ops.push_back(std::move(opts));
        }
        jobs.push_back(std::move(ops));
    }

    std::vector<double> price(p.horizon);
    std::vector<double> emission(p.horizon);
    if (p.palette > 0) {
        // Integer palette levels keep every per-step contribution an exact
        // dyadic rational (demands are multiples of 2^-k kWh), so objective
        // sums are order-independent and exact-front comparisons are not
        // perturbed by 1-ulp summation artifacts. The last step carries both
        // series' strict maxima: cap genes are drawn below the series maxima,
        // so placements that must occupy a max-valued step are unreachable by
        // construction, and concentrating the maxima on one never-optimal
        // step keeps the exact front inside the representable space.
        std::vector<double> price_levels(static_cast<std::size_t>(p.palette));
        std::vector<double> em_levels(static_cast<std::size_t>(p.palette));
        for (auto& v : price_levels) v = std::round(price_d(rng));
        for (auto& v : em_levels) v = std::round(em_d(rng));
        std::uniform_int_distribution<std::size_t> pick(0, static_cast<std::size_t>(p.palette) - 1);
        for (std::size_t t = 0; t < p.horizon; ++t) {
            price[t] = price_levels[pick(rng)];
            emission[t] = em_levels[pick(rng)];
        }
        price[p.horizon - 1] = *std::max_element(price_levels.begin(), price_levels.end()) + 41.0;
        emission[p.horizon - 1] = *std::max_element(em_levels.begin(), em_levels.end()) + 67.0;
    } else {
        for (std::size_t t = 0; t < p.horizon; ++t) {
            price[t] = price_d(rng);
            emission[t] = em_d(rng);
        }
    }
    return EnrichedInstance(make_instance(p.machines, std::move(jobs)),
                            make_profile(std::move(price), std::move(emission)));
}

// random_tiny filtered so that no exact-front witness occupies a step carrying
// either series' maximum (such placements sit outside the reachable cap
// space). Returns the instance and its exact front.
inline std::pair<EnrichedInstance, ParetoFront> random_tiny_with_oracle(
    Rng& rng, const TinyInstanceParams& p, const BruteForceLimits& limits = {6, 24}) {
    while (true) {
        EnrichedInstance e = random_tiny(rng, p);
        ParetoFront oracle = brute_force_pareto(e, limits);
        const double max_price = e.profile().max_price();
        const double max_em = e.profile().max_emission();
        bool clean = true;
        for (const auto& m : oracle.members) {
            for (const auto& pl : m.schedule.placements) {
                for (std::size_t s = pl.start; s < pl.end && clean; ++s)
                    if (e.profile().price_at(s) == max_price ||
                        e.profile().emission_at(s) == max_em)
                        clean = false;
            }
        }
        if (clean) return {std::move(e), std::move(oracle)};
    }
}

// --- Independent oracles (kept free of the implementation paths they check) ---

// Objectives by time-major accumulation over the horizon, written against the
// raw series rather than op_cost.
inline ObjectiveVector summation_oracle(const Schedule& s, const EnrichedInstance& e) {
    ObjectiveVector out;
    const std::size_t horizon = std::max(s.horizon_used, e.horizon());
    const auto& price = e.profile().price();
    const auto& emission = e.profile().emission();
    for (std::size_t t = 0; t < horizon; ++t) {
        for (const auto& p : s.placements) {
            if (t < p.start || t >= p.end) continue;
            double kwh = e.demand_kw(p.job) * e.profile().step_minutes() / 60.0;
            out.energy_cost_eur += price[t % price.size()] * kwh / 1000.0;
            out.emissions_g += emission[t % emission.size()] * kwh;
        }
    }
    for (const auto& p : s.placements)
        out.makespan = std::max(out.makespan, static_cast<long long>(p.end));
    return out;
}

// Naive O(n^2 m) front partition: repeatedly peel the non-dominated subset.
inline std::vector<std::vector<std::size_t>> naive_front_partition(
    const std::vector<ObjectiveVector>& objs) {
    std::vector<std::size_t> remaining(objs.size());
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::vector<std::size_t>> fronts;
    while (!remaining.empty()) {
        std::vector<std::size_t> front;
        for (std::size_t i : remaining) {
            bool dominated = false;
            for (std::size_t j : remaining) {
                if (i == j) continue;
                if (dominates(objs[j], objs[i])) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) front.push_back(i);
        }
        std::vector<std::size_t> rest;
        for (std::size_t i : remaining)
            if (std::find(front.begin(), front.end(), i) == front.end()) rest.push_back(i);
        fronts.push_back(std::move(front));
        remaining = std::move(rest);
    }
    return fronts;
}

// Second exact enumerator, deliberately structured differently from the
// library's: odometer over assignments and start vectors, validity decided by
// validate_schedule, objectives by evaluate.
inline ParetoFront odometer_enumerator(const EnrichedInstance& e) {
    const Instance& inst = e.instance();
    const std::size_t horizon = e.horizon();

    std::vector<const OperationSpec*> ops;
    for (const auto& job : inst.jobs())
        for (const auto& op : job.operations) ops.push_back(&op);

    ParetoFront front;
    std::vector<std::size_t> opt_idx(ops.size(), 0);
    while (true) {
        // Start-vector odometer for this assignment.
        std::vector<std::size_t> start(ops.size(), 0);
        bool starts_live = true;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            std::size_t tau =
                static_cast<std::size_t>(ops[i]->options[opt_idx[i]].duration);
            if (tau > horizon) starts_live = false;
        }
        while (starts_live) {
            Schedule s;
            s.horizon_used = horizon;
            for (std::size_t i = 0; i < ops.size(); ++i) {
                const auto& opt = ops[i]->options[opt_idx[i]];
                s.placements.push_back({ops[i]->job, ops[i]->position, opt.machine, start[i],
                                        start[i] + static_cast<std::size_t>(opt.duration)});
            }
            if (validate_schedule(s, e).empty()) {
                FrontMember m;
                m.objectives = evaluate(s, e);
                m.schedule = std::move(s);
                front_insert(front, std::move(m));
            }
            // advance start odometer
            std::size_t d = 0;
            for (; d < ops.size(); ++d) {
                std::size_t tau =
                    static_cast<std::size_t>(ops[d]->options[opt_idx[d]].duration);
                if (start[d] + tau < horizon) {
                    ++start[d];
                    break;
                }
                start[d] = 0;
            }
            if (d == ops.size()) break;
        }
        // advance assignment odometer
        std::size_t d = 0;
        for (; d < ops.size(); ++d) {
            if (opt_idx[d] + 1 < ops[d]->options.size()) {
                ++opt_idx[d];
                break;
            }
            opt_idx[d] = 0;
        }
        if (d == ops.size()) break;
    }
    canonicalize(front);
    return front;
}

inline bool same_objective_set(const std::vector<ObjectiveVector>& a,
                               const std::vector<ObjectiveVector>& b) {
    return a == b;
}

} // namespace testutil

#endif
