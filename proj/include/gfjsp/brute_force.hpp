#ifndef GFJSP_BRUTE_FORCE_HPP
#define GFJSP_BRUTE_FORCE_HPP

#include "gfjsp/pareto.hpp"

namespace gfjsp {

// Combinatorial blow-up guard for the exact enumerator.
struct BruteForceLimits {
    std::size_t max_ops = 6;
    std::size_t max_horizon = 24;
};

// Exact Pareto front of a tiny instance: enumerates every machine assignment
// and every precedence/disjointness-feasible start-time combination within the
// base horizon and keeps the non-dominated objective vectors with witness
// schedules. Throws Error(Limit) when the instance exceeds the limits.
ParetoFront brute_force_pareto(const EnrichedInstance& e, BruteForceLimits limits = {});

} // namespace gfjsp

#endif
