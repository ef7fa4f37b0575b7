#ifndef GFJSP_ENRICHED_HPP
#define GFJSP_ENRICHED_HPP

#include <cstddef>
#include <vector>

#include "gfjsp/energy.hpp"
#include "gfjsp/instance.hpp"

namespace gfjsp {

// Per-operation cost/emission of one placement.
struct StepCost {
    double cost_eur = 0.0;
    double emissions_g = 0.0;
};

// An instance enriched with an energy profile and per-job power demands:
// demand_kw[i] = base_demand_kw * i / |J|. Immutable after construction.
class EnrichedInstance {
public:
    EnrichedInstance(Instance instance, EnergyProfile profile, double base_demand_kw = 500.0);

    const Instance& instance() const { return instance_; }
    const EnergyProfile& profile() const { return profile_; }
    double base_demand_kw() const { return base_demand_kw_; }
    double demand_kw(int job) const { return demand_kw_[static_cast<std::size_t>(job - 1)]; }
    std::size_t horizon() const { return profile_.size(); }

    // Energy drawn per occupied time step by an operation of `job`, in kWh.
    double step_kwh(int job) const {
        return demand_kw(job) * static_cast<double>(profile_.step_minutes()) / 60.0;
    }

    // Total energy of an operation with duration tau, in kWh.
    double op_kwh(int job, int tau) const { return step_kwh(job) * static_cast<double>(tau); }

private:
    Instance instance_;
    EnergyProfile profile_;
    double base_demand_kw_;
    std::vector<double> demand_kw_;
};

EnrichedInstance enrich(Instance instance, EnergyProfile profile, double base_demand_kw = 500.0);

// Energy cost (EUR) and emissions (gCO2eq) of processing operation (i,j) on
// machine k starting at step t:
//   cost      = sum_{s=t}^{t+tau-1} price[s]    * step_kwh / 1000
//   emissions = sum_{s=t}^{t+tau-1} emission[s] * step_kwh
// Throws Error(Horizon) if the operation would overrun the profile, and
// Error(Param) if machine k is not eligible for (i,j).
StepCost op_cost(const EnrichedInstance& e, int job, int position, int machine, std::size_t t);

// Same sums evaluated on a cyclically tiled horizon of length `horizon`
// (used for schedules that extended beyond the base profile).
StepCost op_cost_tiled(const EnrichedInstance& e, int job, int tau, std::size_t t,
                       std::size_t horizon);

} // namespace gfjsp

#endif
