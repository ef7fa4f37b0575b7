#include "gfjsp/refine.hpp"

#include <algorithm>
#include <limits>

#include "gfjsp/error.hpp"

namespace gfjsp {

namespace {

constexpr std::size_t kNoBound = std::numeric_limits<std::size_t>::max();

// Machine predecessor/successor of the placement at `flat` in the schedule's
// frozen per-machine order (by start time).
struct MachineNeighbors {
    std::size_t pred_end = 0;
    std::size_t succ_start = kNoBound;
};

MachineNeighbors machine_neighbors(const Schedule& s, std::size_t flat) {
    const OpPlacement& self = s.placements[flat];
    MachineNeighbors nb;
    for (std::size_t i = 0; i < s.placements.size(); ++i) {
        if (i == flat) continue;
        const OpPlacement& other = s.placements[i];
        if (other.machine != self.machine) continue;
        bool before = std::tie(other.start, other.job, other.position) <
                      std::tie(self.start, self.job, self.position);
        if (before)
            nb.pred_end = std::max(nb.pred_end, other.end);
        else
            nb.succ_start = std::min(nb.succ_start, other.start);
    }
    return nb;
}

StartWindow window_at(const Schedule& s, const EnrichedInstance& e, std::size_t flat,
                      std::size_t makespan_cap) {
    const Instance& inst = e.instance();
    const OpPlacement& p = s.placements[flat];
    const std::size_t tau = p.end - p.start;

    std::size_t lower = 0;
    if (p.position > 1) lower = s.placements[inst.flat_index(p.job, p.position - 1)].end;

    std::size_t upper_end = makespan_cap;
    const Job& job = inst.jobs()[static_cast<std::size_t>(p.job - 1)];
    if (static_cast<std::size_t>(p.position) < job.operations.size())
        upper_end = std::min(upper_end, s.placements[inst.flat_index(p.job, p.position + 1)].start);

    MachineNeighbors nb = machine_neighbors(s, flat);
    lower = std::max(lower, nb.pred_end);
    upper_end = std::min(upper_end, nb.succ_start);

    return {lower, upper_end - tau};
}

} // namespace

StartWindow feasible_window(const Schedule& s, const EnrichedInstance& e, int job, int position,
                            std::size_t makespan_cap) {
    if (makespan_cap == 0) makespan_cap = s.makespan();
    return window_at(s, e, e.instance().flat_index(job, position), makespan_cap);
}

std::vector<std::size_t> refinement_queue(const Schedule& s, const EnrichedInstance& e) {
    std::vector<std::size_t> order(s.placements.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const OpPlacement& pa = s.placements[a];
        const OpPlacement& pb = s.placements[b];
        double ka = e.op_kwh(pa.job, static_cast<int>(pa.end - pa.start));
        double kb = e.op_kwh(pb.job, static_cast<int>(pb.end - pb.start));
        if (ka != kb) return ka > kb;
        return std::tie(pa.job, pa.position) < std::tie(pb.job, pb.position);
    });
    return order;
}

namespace {

enum class Target { Cost, Emissions };

void refine_child(Schedule& child, const EnrichedInstance& e,
                  const std::vector<std::size_t>& queue, std::size_t makespan_cap, Target target) {
    const std::size_t horizon = std::max(child.horizon_used, e.horizon());
    for (std::size_t flat : queue) {
        OpPlacement& p = child.placements[flat];
        const int tau = static_cast<int>(p.end - p.start);
        StartWindow w = window_at(child, e, flat, makespan_cap);

        std::size_t best_t = w.lower;
        double best_value = std::numeric_limits<double>::infinity();
        for (std::size_t t = w.lower; t <= w.upper; ++t) {
            StepCost c = op_cost_tiled(e, p.job, tau, t, horizon);
            double v = target == Target::Cost ? c.cost_eur : c.emissions_g;
            if (v < best_value) {
                best_value = v;
                best_t = t;
            }
        }
        p.start = best_t;
        p.end = best_t + static_cast<std::size_t>(tau);
    }
}

} // namespace

RefineResult local_refine(const Schedule& parent, const EnrichedInstance& e) {
    if (parent.placements.size() != e.instance().total_operations())
        throw param_error("local_refine requires a fully placed schedule");

    const std::vector<std::size_t> queue = refinement_queue(parent, e);
    const std::size_t makespan_cap = parent.makespan();

    RefineResult out{parent, parent};
    refine_child(out.cost_child, e, queue, makespan_cap, Target::Cost);
    refine_child(out.emission_child, e, queue, makespan_cap, Target::Emissions);
    return out;
}

} // namespace gfjsp
