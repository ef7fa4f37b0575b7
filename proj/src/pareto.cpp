#include "gfjsp/pareto.hpp"

#include <algorithm>

namespace gfjsp {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.makespan > b.makespan || a.energy_cost_eur > b.energy_cost_eur ||
        a.emissions_g > b.emissions_g)
        return false;
    return a.makespan < b.makespan || a.energy_cost_eur < b.energy_cost_eur ||
           a.emissions_g < b.emissions_g;
}

bool objective_less(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.makespan != b.makespan) return a.makespan < b.makespan;
    if (a.energy_cost_eur != b.energy_cost_eur) return a.energy_cost_eur < b.energy_cost_eur;
    return a.emissions_g < b.emissions_g;
}

bool front_insert(ParetoFront& front, FrontMember member) {
    for (const auto& m : front.members) {
        if (m.objectives == member.objectives || dominates(m.objectives, member.objectives))
            return false;
    }
    std::erase_if(front.members, [&](const FrontMember& m) {
        return dominates(member.objectives, m.objectives);
    });
    front.members.push_back(std::move(member));
    return true;
}

void canonicalize(ParetoFront& front) {
    std::sort(front.members.begin(), front.members.end(),
              [](const FrontMember& a, const FrontMember& b) {
                  return objective_less(a.objectives, b.objectives);
              });
}

std::vector<ObjectiveVector> objective_set(const ParetoFront& front) {
    std::vector<ObjectiveVector> out;
    out.reserve(front.members.size());
    for (const auto& m : front.members) out.push_back(m.objectives);
    std::sort(out.begin(), out.end(), objective_less);
    return out;
}

} // namespace gfjsp
