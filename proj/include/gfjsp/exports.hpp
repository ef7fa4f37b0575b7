#ifndef GFJSP_EXPORTS_HPP
#define GFJSP_EXPORTS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "gfjsp/pareto.hpp"

namespace gfjsp {

// CSV with columns makespan,energy_cost_eur,emissions_g,emissions_t
// (tons = grams / 1e6), members in canonical front order.
std::string front_to_csv(const ParetoFront& front);

// Objective triples parsed back from front_to_csv output.
std::vector<ObjectiveVector> front_from_csv(std::string_view csv);

// JSON array of members: objectives plus the schedule export record
// {job, op, machine, start, end, cost_eur, emissions_g} per operation.
std::string front_to_json(const ParetoFront& front, const EnrichedInstance& e);

// Objective triples from front_to_json output (schedules are not rebuilt).
std::vector<ObjectiveVector> front_objectives_from_json(std::string_view json);

// Schedule export record of a single schedule.
std::string schedule_to_json(const Schedule& s, const EnrichedInstance& e);

// Plot-ready Gantt data: per-machine lanes of {job, op, start, end} bars plus
// the aligned price and emission series over the horizon actually used.
std::string gantt_to_json(const Schedule& s, const EnrichedInstance& e);

} // namespace gfjsp

#endif
