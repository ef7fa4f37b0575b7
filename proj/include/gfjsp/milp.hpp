#ifndef GFJSP_MILP_HPP
#define GFJSP_MILP_HPP

#include <optional>
#include <string>

#include "gfjsp/enriched.hpp"

namespace gfjsp {

enum class MilpObjective { Makespan, Cost, Emissions };

// Epsilon-constraint scalarization request for the LP text emitter.
struct MilpEmission {
    MilpObjective objective = MilpObjective::Makespan;
    std::optional<double> eps_makespan;  // bound on cmax (only when not the objective)
    std::optional<double> eps_cost;      // bound on psum
    std::optional<double> eps_emissions; // bound on esum
    double big_l = 0.0;                  // 0 selects the default 2*|T|; must be >= 2*|T|
    std::size_t p_variable_cap = 200000; // refusal guard on |O|*|M|*|T|
};

// Emits the scheduling MILP in CPLEX LP text format. Variables:
//   x_i_j_k (binary assignment), y_i_j_i'_j'_k (binary machine order),
//   p_i_j_k_t (binary start indicator), s_i_j_k / c_i_j_k (start/end),
//   cmax, psum, esum. x/s/c/p are declared for every machine; ineligible
//   machines get x fixed to zero. Throws Error(Limit) when the p-variable
//   count exceeds the cap, Error(Param) on inconsistent epsilon bounds.
std::string emit_milp(const EnrichedInstance& e, const MilpEmission& m);

} // namespace gfjsp

#endif
