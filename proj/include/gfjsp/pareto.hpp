#ifndef GFJSP_PARETO_HPP
#define GFJSP_PARETO_HPP

#include <vector>

#include "gfjsp/genotype.hpp"
#include "gfjsp/schedule.hpp"

namespace gfjsp {

// Minimization dominance: a <= b in all components and a < b in at least one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Lexicographic (makespan, cost, emissions) order for canonical fronts.
bool objective_less(const ObjectiveVector& a, const ObjectiveVector& b);

struct FrontMember {
    ObjectiveVector objectives;
    Schedule schedule;
    Genotype genotype; // empty for oracle-produced fronts
};

// Mutually non-dominating member set, canonically sorted.
struct ParetoFront {
    std::vector<FrontMember> members;

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
};

// Inserts unless dominated by or equal to an existing member; evicts members
// the candidate dominates. Returns true when the candidate entered.
bool front_insert(ParetoFront& front, FrontMember member);

// Sorts members lexicographically by objectives.
void canonicalize(ParetoFront& front);

// Canonically sorted objective vectors of the front.
std::vector<ObjectiveVector> objective_set(const ParetoFront& front);

} // namespace gfjsp

#endif
