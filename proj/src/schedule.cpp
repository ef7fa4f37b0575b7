#include "gfjsp/schedule.hpp"

#include <algorithm>
#include <map>

#include "gfjsp/error.hpp"

namespace gfjsp {

std::size_t Schedule::makespan() const {
    std::size_t ms = 0;
    for (const auto& p : placements) ms = std::max(ms, p.end);
    return ms;
}

std::vector<std::string> validate_schedule(const Schedule& s, const EnrichedInstance& e) {
    std::vector<std::string> out;
    if (s.empty()) return out;

    const Instance& inst = e.instance();
    auto op_name = [](const OpPlacement& p) {
        return "(" + std::to_string(p.job) + "," + std::to_string(p.position) + ")";
    };

    if (s.placements.size() != inst.total_operations())
        out.push_back("schedule places " + std::to_string(s.placements.size()) + " operations, " +
                      "instance has " + std::to_string(inst.total_operations()));

    std::map<std::pair<int, int>, const OpPlacement*> by_op;
    std::map<int, std::vector<const OpPlacement*>> by_machine;
    for (const auto& p : s.placements) {
        if (p.job < 1 || static_cast<std::size_t>(p.job) > inst.job_count()) {
            out.push_back("placement names unknown job " + std::to_string(p.job));
            continue;
        }
        const Job& job = inst.jobs()[static_cast<std::size_t>(p.job - 1)];
        if (p.position < 1 || static_cast<std::size_t>(p.position) > job.operations.size()) {
            out.push_back("placement names unknown operation " + op_name(p));
            continue;
        }
        if (!by_op.emplace(std::make_pair(p.job, p.position), &p).second)
            out.push_back("operation " + op_name(p) + " placed more than once");

        int tau = inst.operation(p.job, p.position).duration_on(p.machine);
        if (tau < 0)
            out.push_back("operation " + op_name(p) + " assigned to ineligible machine " +
                          std::to_string(p.machine));
        else if (p.end != p.start + static_cast<std::size_t>(tau))
            out.push_back("operation " + op_name(p) + " spans [" + std::to_string(p.start) + "," +
                          std::to_string(p.end) + ") but lasts " + std::to_string(tau) +
                          " steps on machine " + std::to_string(p.machine));
        if (p.end > s.horizon_used)
            out.push_back("operation " + op_name(p) + " ends at " + std::to_string(p.end) +
                          " beyond horizon_used " + std::to_string(s.horizon_used));
        by_machine[p.machine].push_back(&p);
    }

    for (const auto& job : inst.jobs()) {
        for (std::size_t pos = 1; pos <= job.operations.size(); ++pos) {
            if (!by_op.count({job.index, static_cast<int>(pos)})) {
                out.push_back("operation (" + std::to_string(job.index) + "," + std::to_string(pos) +
                              ") is not placed");
                continue;
            }
            if (pos >= 2) {
                const OpPlacement* prev = by_op[{job.index, static_cast<int>(pos - 1)}];
                const OpPlacement* cur = by_op[{job.index, static_cast<int>(pos)}];
                if (prev && cur && cur->start < prev->end)
                    out.push_back("operation " + op_name(*cur) + " starts before its job predecessor ends");
            }
        }
    }

    for (auto& [machine, ops] : by_machine) {
        std::sort(ops.begin(), ops.end(),
                  [](const OpPlacement* a, const OpPlacement* b) { return a->start < b->start; });
        for (std::size_t i = 1; i < ops.size(); ++i) {
            if (ops[i]->start < ops[i - 1]->end)
                out.push_back("operations " + op_name(*ops[i - 1]) + " and " + op_name(*ops[i]) +
                              " overlap on machine " + std::to_string(machine));
        }
    }

    return out;
}

ObjectiveVector evaluate(const Schedule& s, const EnrichedInstance& e) {
    auto violations = validate_schedule(s, e);
    if (!violations.empty()) {
        std::string report = "schedule invariant violations:";
        for (const auto& v : violations) report += "\n  - " + v;
        throw validation_error(report);
    }

    ObjectiveVector obj;
    const std::size_t horizon = std::max(s.horizon_used, e.horizon());
    for (const auto& p : s.placements) {
        obj.makespan = std::max(obj.makespan, static_cast<long long>(p.end));
        StepCost c = op_cost_tiled(e, p.job, static_cast<int>(p.end - p.start), p.start, horizon);
        obj.energy_cost_eur += c.cost_eur;
        obj.emissions_g += c.emissions_g;
    }
    return obj;
}

} // namespace gfjsp
