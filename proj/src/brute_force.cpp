#include "gfjsp/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfjsp/error.hpp"

namespace gfjsp {

namespace {

struct FlatOp {
    int job = 0;
    int position = 0;
    const OperationSpec* spec = nullptr;
    double min_cost = 0.0;      // over all options and starts
    double min_emissions = 0.0; // over all options and starts
    long long min_chain_end = 0; // earliest end via min durations up the job chain
};

struct Enumerator {
    const EnrichedInstance& e;
    std::vector<FlatOp> ops;
    std::size_t horizon;
    ParetoFront front;

    std::vector<OpPlacement> placed;
    std::vector<double> rest_cost;       // suffix sums of min_cost
    std::vector<double> rest_emissions;  // suffix sums of min_emissions
    std::vector<long long> rest_chain;   // suffix max of min_chain_end

    explicit Enumerator(const EnrichedInstance& enriched) : e(enriched) {
        const Instance& inst = e.instance();
        horizon = e.horizon();
        for (const auto& job : inst.jobs()) {
            long long chain = 0;
            for (const auto& op : job.operations) {
                FlatOp f;
                f.job = job.index;
                f.position = op.position;
                f.spec = &op;
                f.min_cost = std::numeric_limits<double>::infinity();
                f.min_emissions = std::numeric_limits<double>::infinity();
                int min_tau = op.options.front().duration;
                for (const auto& opt : op.options) {
                    min_tau = std::min(min_tau, opt.duration);
                    for (std::size_t t = 0; t + static_cast<std::size_t>(opt.duration) <= horizon;
                         ++t) {
                        StepCost c = op_cost_tiled(e, job.index, opt.duration, t, horizon);
                        f.min_cost = std::min(f.min_cost, c.cost_eur);
                        f.min_emissions = std::min(f.min_emissions, c.emissions_g);
                    }
                }
                chain += min_tau;
                f.min_chain_end = chain;
                ops.push_back(f);
            }
        }

        rest_cost.assign(ops.size() + 1, 0.0);
        rest_emissions.assign(ops.size() + 1, 0.0);
        rest_chain.assign(ops.size() + 1, 0);
        for (std::size_t i = ops.size(); i-- > 0;) {
            rest_cost[i] = rest_cost[i + 1] + ops[i].min_cost;
            rest_emissions[i] = rest_emissions[i + 1] + ops[i].min_emissions;
            rest_chain[i] = std::max(rest_chain[i + 1], ops[i].min_chain_end);
        }
        placed.resize(ops.size());
    }

    // True when some archive member renders every completion of this partial
    // assignment dominated or duplicate. A small margin keeps the bound sound
    // under floating-point rounding of the incremental sums.
    bool prunable(std::size_t depth, long long ms, double cost, double em) const {
        long long lb_ms = std::max(ms, rest_chain[depth]);
        double lb_cost = cost + rest_cost[depth];
        double lb_em = em + rest_emissions[depth];
        lb_cost -= 1e-7 * (1.0 + std::abs(lb_cost));
        lb_em -= 1e-7 * (1.0 + std::abs(lb_em));
        for (const auto& m : front.members) {
            if (m.objectives.makespan <= lb_ms && m.objectives.energy_cost_eur <= lb_cost &&
                m.objectives.emissions_g <= lb_em)
                return true;
        }
        return false;
    }

    void search(std::size_t depth, long long ms, double cost, double em) {
        if (depth == ops.size()) {
            FrontMember member;
            member.objectives = {ms, cost, em};
            member.schedule.placements.assign(placed.begin(), placed.end());
            member.schedule.horizon_used = horizon;
            front_insert(front, std::move(member));
            return;
        }
        if (prunable(depth, ms, cost, em)) return;

        const FlatOp& op = ops[depth];
        std::size_t ready = 0;
        if (op.position > 1) ready = placed[depth - 1].end; // job-major order: predecessor is prior

        for (const auto& opt : op.spec->options) {
            const std::size_t tau = static_cast<std::size_t>(opt.duration);
            for (std::size_t t = ready; t + tau <= horizon; ++t) {
                bool clash = false;
                for (std::size_t i = 0; i < depth; ++i) {
                    if (placed[i].machine != opt.machine) continue;
                    if (t < placed[i].end && placed[i].start < t + tau) {
                        clash = true;
                        break;
                    }
                }
                if (clash) continue;

                StepCost c = op_cost_tiled(e, op.job, opt.duration, t, horizon);
                placed[depth] = {op.job, op.position, opt.machine, t, t + tau};
                search(depth + 1, std::max(ms, static_cast<long long>(t + tau)),
                       cost + c.cost_eur, em + c.emissions_g);
            }
        }
    }
};

} // namespace

ParetoFront brute_force_pareto(const EnrichedInstance& e, BruteForceLimits limits) {
    const std::size_t n_ops = e.instance().total_operations();
    if (n_ops > limits.max_ops)
        throw limit_error("brute force refused: " + std::to_string(n_ops) + " operations exceed " +
                          "the limit of " + std::to_string(limits.max_ops));
    if (e.horizon() > limits.max_horizon)
        throw limit_error("brute force refused: horizon of " + std::to_string(e.horizon()) +
                          " steps exceeds the limit of " + std::to_string(limits.max_horizon));

    Enumerator en(e);
    en.search(0, 0, 0.0, 0.0);
    canonicalize(en.front);
    return en.front;
}

} // namespace gfjsp
