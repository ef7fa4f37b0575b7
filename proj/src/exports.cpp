#include "gfjsp/exports.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

#include "gfjsp/error.hpp"

namespace gfjsp {

namespace {

std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

double parse_num(std::string_view field, std::size_t row) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw parse_error("front CSV row " + std::to_string(row) + ": bad number '" +
                          std::string(field) + "'");
    return v;
}

nlohmann::json placement_record(const OpPlacement& p, const EnrichedInstance& e,
                                std::size_t horizon) {
    StepCost c = op_cost_tiled(e, p.job, static_cast<int>(p.end - p.start), p.start, horizon);
    return {
        {"job", p.job},         {"op", p.position},     {"machine", p.machine},
        {"start", p.start},     {"end", p.end},         {"cost_eur", c.cost_eur},
        {"emissions_g", c.emissions_g},
    };
}

nlohmann::json schedule_record(const Schedule& s, const EnrichedInstance& e) {
    const std::size_t horizon = std::max(s.horizon_used, e.horizon());
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& p : s.placements) ops.push_back(placement_record(p, e, horizon));
    ObjectiveVector obj = evaluate(s, e);
    return {
        {"operations", std::move(ops)},
        {"objectives",
         {{"makespan", obj.makespan},
          {"energy_cost_eur", obj.energy_cost_eur},
          {"emissions_g", obj.emissions_g}}},
        {"horizon_used", s.horizon_used},
    };
}

} // namespace

std::string front_to_csv(const ParetoFront& front) {
    std::ostringstream out;
    out << "makespan,energy_cost_eur,emissions_g,emissions_t\n";
    for (const auto& m : front.members) {
        out << m.objectives.makespan << ',' << num(m.objectives.energy_cost_eur) << ','
            << num(m.objectives.emissions_g) << ',' << num(m.objectives.emissions_g / 1e6) << '\n';
    }
    return out.str();
}

std::vector<ObjectiveVector> front_from_csv(std::string_view csv) {
    std::vector<ObjectiveVector> out;
    std::size_t start = 0;
    std::size_t row = 0;
    while (start < csv.size()) {
        std::size_t nl = csv.find('\n', start);
        std::string_view line =
            nl == std::string_view::npos ? csv.substr(start) : csv.substr(start, nl - start);
        start = nl == std::string_view::npos ? csv.size() : nl + 1;
        if (line.empty()) continue;
        ++row;
        if (row == 1) {
            if (line != "makespan,energy_cost_eur,emissions_g,emissions_t")
                throw parse_error("front CSV: unexpected header '" + std::string(line) + "'");
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t p = 0;
        while (true) {
            std::size_t comma = line.find(',', p);
            if (comma == std::string_view::npos) {
                fields.push_back(line.substr(p));
                break;
            }
            fields.push_back(line.substr(p, comma - p));
            p = comma + 1;
        }
        if (fields.size() != 4)
            throw parse_error("front CSV row " + std::to_string(row) + ": expected 4 columns");
        ObjectiveVector o;
        o.makespan = static_cast<long long>(parse_num(fields[0], row));
        o.energy_cost_eur = parse_num(fields[1], row);
        o.emissions_g = parse_num(fields[2], row);
        out.push_back(o);
    }
    return out;
}

std::string front_to_json(const ParetoFront& front, const EnrichedInstance& e) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : front.members) members.push_back(schedule_record(m.schedule, e));
    nlohmann::json doc{{"front", std::move(members)}};
    return doc.dump(2) + "\n";
}

std::vector<ObjectiveVector> front_objectives_from_json(std::string_view json) {
    nlohmann::json doc = nlohmann::json::parse(json, nullptr, false);
    if (doc.is_discarded() || !doc.contains("front") || !doc["front"].is_array())
        throw parse_error("front JSON: expected an object with a 'front' array");
    std::vector<ObjectiveVector> out;
    for (const auto& m : doc["front"]) {
        const auto& o = m.at("objectives");
        ObjectiveVector v;
        v.makespan = o.at("makespan").get<long long>();
        v.energy_cost_eur = o.at("energy_cost_eur").get<double>();
        v.emissions_g = o.at("emissions_g").get<double>();
        out.push_back(v);
    }
    return out;
}

std::string schedule_to_json(const Schedule& s, const EnrichedInstance& e) {
    return schedule_record(s, e).dump(2) + "\n";
}

std::string gantt_to_json(const Schedule& s, const EnrichedInstance& e) {
    const std::size_t horizon = std::max(s.horizon_used, e.horizon());
    nlohmann::json lanes = nlohmann::json::array();
    for (int k = 1; k <= e.instance().machine_count(); ++k) {
        nlohmann::json bars = nlohmann::json::array();
        for (const auto& p : s.placements) {
            if (p.machine != k) continue;
            bars.push_back({{"job", p.job}, {"op", p.position}, {"start", p.start}, {"end", p.end}});
        }
        std::sort(bars.begin(), bars.end(), [](const nlohmann::json& a, const nlohmann::json& b) {
            return a.at("start").get<std::size_t>() < b.at("start").get<std::size_t>();
        });
        lanes.push_back({{"machine", k}, {"bars", std::move(bars)}});
    }
    nlohmann::json price = nlohmann::json::array();
    nlohmann::json emission = nlohmann::json::array();
    for (std::size_t t = 0; t < horizon; ++t) {
        price.push_back(e.profile().price_at(t));
        emission.push_back(e.profile().emission_at(t));
    }
    nlohmann::json doc{
        {"step_minutes", e.profile().step_minutes()},
        {"horizon", horizon},
        {"lanes", std::move(lanes)},
        {"price_eur_mwh", std::move(price)},
        {"emission_g_per_kwh", std::move(emission)},
    };
    return doc.dump(2) + "\n";
}

} // namespace gfjsp
