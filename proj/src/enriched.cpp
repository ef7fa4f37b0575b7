#include "gfjsp/enriched.hpp"

#include <string>

#include "gfjsp/error.hpp"

namespace gfjsp {

EnrichedInstance::EnrichedInstance(Instance instance, EnergyProfile profile, double base_demand_kw)
    : instance_(std::move(instance)), profile_(std::move(profile)), base_demand_kw_(base_demand_kw) {
    if (base_demand_kw_ <= 0.0) throw param_error("base_demand_kw must be positive");
    const double jobs = static_cast<double>(instance_.job_count());
    demand_kw_.reserve(instance_.job_count());
    for (std::size_t i = 1; i <= instance_.job_count(); ++i)
        demand_kw_.push_back(base_demand_kw_ * static_cast<double>(i) / jobs);
}

EnrichedInstance enrich(Instance instance, EnergyProfile profile, double base_demand_kw) {
    return EnrichedInstance(std::move(instance), std::move(profile), base_demand_kw);
}

StepCost op_cost_tiled(const EnrichedInstance& e, int job, int tau, std::size_t t,
                       std::size_t horizon) {
    if (t + static_cast<std::size_t>(tau) > horizon)
        throw horizon_error("operation starting at step " + std::to_string(t) + " with duration " +
                            std::to_string(tau) + " overruns the horizon of " +
                            std::to_string(horizon) + " steps");
    const double kwh = e.step_kwh(job);
    StepCost out;
    for (std::size_t s = t; s < t + static_cast<std::size_t>(tau); ++s) {
        out.cost_eur += e.profile().price_at(s) * kwh / 1000.0;
        out.emissions_g += e.profile().emission_at(s) * kwh;
    }
    return out;
}

StepCost op_cost(const EnrichedInstance& e, int job, int position, int machine, std::size_t t) {
    const OperationSpec& op = e.instance().operation(job, position);
    int tau = op.duration_on(machine);
    if (tau < 0)
        throw param_error("machine " + std::to_string(machine) + " is not eligible for operation (" +
                          std::to_string(job) + "," + std::to_string(position) + ")");
    return op_cost_tiled(e, job, tau, t, e.horizon());
}

} // namespace gfjsp
