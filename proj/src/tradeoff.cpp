#include "gfjsp/tradeoff.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "gfjsp/error.hpp"

namespace gfjsp {

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::Makespan: return "makespan";
        case Axis::Cost: return "energy_cost_eur";
        case Axis::Emissions: return "emissions_g";
    }
    return "?";
}

double axis_value(const ObjectiveVector& o, Axis a) {
    switch (a) {
        case Axis::Makespan: return static_cast<double>(o.makespan);
        case Axis::Cost: return o.energy_cost_eur;
        case Axis::Emissions: return o.emissions_g;
    }
    return 0.0;
}

TradeoffReport tradeoff_table(const std::vector<ObjectiveVector>& front, Axis axis_a, Axis axis_b,
                              const std::vector<double>& deltas) {
    if (front.empty()) throw param_error("tradeoff analysis requires a non-empty front");
    if (axis_a == axis_b) throw param_error("tradeoff axes must differ");

    TradeoffReport report;
    report.axis_a = axis_a;
    report.axis_b = axis_b;

    double baseline_a = std::numeric_limits<double>::infinity();
    for (const auto& o : front) baseline_a = std::min(baseline_a, axis_value(o, axis_a));
    double baseline_b = std::numeric_limits<double>::infinity();
    for (const auto& o : front)
        if (axis_value(o, axis_a) == baseline_a)
            baseline_b = std::min(baseline_b, axis_value(o, axis_b));
    report.baseline_a = baseline_a;
    report.baseline_b = baseline_b;

    const double denom = std::abs(baseline_b);
    for (double delta : deltas) {
        if (delta < 0.0) throw param_error("delta percentages must be >= 0");
        const double threshold = baseline_a + std::abs(baseline_a) * delta / 100.0;
        double best_b = std::numeric_limits<double>::infinity();
        for (const auto& o : front)
            if (axis_value(o, axis_a) <= threshold) best_b = std::min(best_b, axis_value(o, axis_b));
        TradeoffRow row;
        row.delta_percent = delta;
        row.best_b = best_b;
        row.savings_percent = denom == 0.0 ? 0.0 : (baseline_b - best_b) / denom * 100.0;
        report.rows.push_back(row);
    }
    return report;
}

namespace {
std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}
} // namespace

std::string tradeoff_to_csv(const TradeoffReport& report) {
    std::ostringstream out;
    out << "axis_a,axis_b,baseline_a,baseline_b,delta_percent,best_b,savings_percent\n";
    for (const auto& row : report.rows) {
        out << axis_name(report.axis_a) << ',' << axis_name(report.axis_b) << ','
            << num(report.baseline_a) << ',' << num(report.baseline_b) << ','
            << num(row.delta_percent) << ',' << num(row.best_b) << ','
            << num(row.savings_percent) << '\n';
    }
    return out.str();
}

} // namespace gfjsp
