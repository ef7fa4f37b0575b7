#ifndef GFJSP_REFINE_HPP
#define GFJSP_REFINE_HPP

#include <cstddef>
#include <vector>

#include "gfjsp/schedule.hpp"

namespace gfjsp {

// Inclusive feasible start range [lower, upper] of one operation.
struct StartWindow {
    std::size_t lower = 0;
    std::size_t upper = 0;
};

// Feasible start range of operation (job, position) with machine assignment
// and per-machine operation order frozen:
//   lower = max(end of job predecessor, end of machine predecessor)
//   upper = min(start of job successor, start of machine successor, makespan_cap) - tau
// makespan_cap = 0 means "use the schedule's own makespan".
StartWindow feasible_window(const Schedule& s, const EnrichedInstance& e, int job, int position,
                            std::size_t makespan_cap = 0);

// Dequeue order of the refinement queue: flat operation ids sorted by
// per-operation energy consumption (kWh) descending, ties by (job, position).
std::vector<std::size_t> refinement_queue(const Schedule& s, const EnrichedInstance& e);

struct RefineResult {
    Schedule cost_child;     // each operation moved to its cheapest in-window start
    Schedule emission_child; // each operation moved to its lowest-emission start
};

// Greedy local refinement: walks the queue and repositions each operation
// within its current feasible window, never increasing the parent's makespan.
// Ties break to the earliest start. Both children remain valid schedules.
RefineResult local_refine(const Schedule& parent, const EnrichedInstance& e);

} // namespace gfjsp

#endif
