#ifndef GFJSP_SCHEDULE_HPP
#define GFJSP_SCHEDULE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "gfjsp/enriched.hpp"

namespace gfjsp {

// Concrete placement of one operation.
struct OpPlacement {
    int job = 0;
    int position = 0;
    int machine = 0;
    std::size_t start = 0;
    std::size_t end = 0; // start + duration on the chosen machine
};

// A decoded schedule. Placements are stored in flat (job-major) operation
// order. horizon_used >= |T| when the decoder extended the profile.
struct Schedule {
    std::vector<OpPlacement> placements;
    std::size_t horizon_used = 0;

    bool empty() const { return placements.empty(); }
    std::size_t makespan() const;
};

// (c^max, p^sum, e^sum) for minimization.
struct ObjectiveVector {
    long long makespan = 0;
    double energy_cost_eur = 0.0;
    double emissions_g = 0.0;

    bool operator==(const ObjectiveVector&) const = default;
};

// All violated schedule invariants, empty if the schedule is valid:
// machine eligibility, end = start + tau, job precedence, per-machine
// disjointness, horizon containment, full coverage of the instance's operations.
std::vector<std::string> validate_schedule(const Schedule& s, const EnrichedInstance& e);

// Objective evaluation. Throws Error(Validation) carrying the violation report
// if the schedule breaks its invariants. An empty schedule evaluates to (0,0,0).
ObjectiveVector evaluate(const Schedule& s, const EnrichedInstance& e);

} // namespace gfjsp

#endif
