#ifndef GFJSP_TRADEOFF_HPP
#define GFJSP_TRADEOFF_HPP

#include <string>
#include <vector>

#include "gfjsp/pareto.hpp"

namespace gfjsp {

enum class Axis { Makespan, Cost, Emissions };

const char* axis_name(Axis a);
double axis_value(const ObjectiveVector& o, Axis a);

struct TradeoffRow {
    double delta_percent = 0.0; // tolerated relative increase of axis A
    double best_b = 0.0;        // best axis-B value within the threshold
    double savings_percent = 0.0;
};

// Savings of axis B attainable by tolerating relative increases of axis A.
// baseline_a = min axis A over the front; baseline_b = best axis B among
// members attaining baseline_a. Thresholds grow by |baseline_a| * delta/100
// and savings use an absolute-value denominator, so both remain meaningful
// for negative baselines.
struct TradeoffReport {
    Axis axis_a = Axis::Makespan;
    Axis axis_b = Axis::Cost;
    double baseline_a = 0.0;
    double baseline_b = 0.0;
    std::vector<TradeoffRow> rows;
};

TradeoffReport tradeoff_table(const std::vector<ObjectiveVector>& front, Axis axis_a, Axis axis_b,
                              const std::vector<double>& deltas = {5.0, 20.0, 50.0, 75.0});

std::string tradeoff_to_csv(const TradeoffReport& report);

} // namespace gfjsp

#endif
