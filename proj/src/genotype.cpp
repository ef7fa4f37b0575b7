#include "gfjsp/genotype.hpp"

#include <algorithm>

namespace gfjsp {

std::string genotype_violation(const Genotype& g, const Instance& inst) {
    const std::size_t n = inst.total_operations();
    if (g.sequence.size() != n) return "sequence length != total operation count";
    if (g.machine.size() != n) return "machine string length != total operation count";
    if (g.price_cap.size() != n) return "price cap string length != total operation count";
    if (g.emission_cap.size() != n) return "emission cap string length != total operation count";

    std::vector<std::size_t> seen(inst.job_count(), 0);
    for (int job : g.sequence) {
        if (job < 1 || static_cast<std::size_t>(job) > inst.job_count())
            return "sequence contains unknown job " + std::to_string(job);
        ++seen[static_cast<std::size_t>(job - 1)];
    }
    for (std::size_t i = 0; i < inst.job_count(); ++i) {
        std::size_t want = inst.jobs()[i].operations.size();
        if (seen[i] != want)
            return "job " + std::to_string(i + 1) + " occurs " + std::to_string(seen[i]) +
                   " times in sequence, expected " + std::to_string(want);
    }
    for (std::size_t f = 0; f < n; ++f) {
        const auto& op = inst.operation(f);
        if (g.machine[f] < 0 || static_cast<std::size_t>(g.machine[f]) >= op.options.size())
            return "machine gene " + std::to_string(g.machine[f]) + " out of range for operation (" +
                   std::to_string(op.job) + "," + std::to_string(op.position) + ")";
    }
    return {};
}

bool genotype_valid(const Genotype& g, const Instance& inst) {
    return genotype_violation(g, inst).empty();
}

Genotype random_genotype(const EnrichedInstance& e, Rng& rng) {
    const Instance& inst = e.instance();
    const std::size_t n = inst.total_operations();

    Genotype g;
    g.sequence.reserve(n);
    for (const auto& job : inst.jobs())
        g.sequence.insert(g.sequence.end(), job.operations.size(), job.index);
    std::shuffle(g.sequence.begin(), g.sequence.end(), rng);

    g.machine.reserve(n);
    for (std::size_t f = 0; f < n; ++f) {
        const auto& op = inst.operation(f);
        std::uniform_int_distribution<std::size_t> pick(0, op.options.size() - 1);
        g.machine.push_back(static_cast<int>(pick(rng)));
    }

    const auto& profile = e.profile();
    std::uniform_real_distribution<double> price(profile.min_price(), profile.max_price());
    std::uniform_real_distribution<double> emission(profile.min_emission(), profile.max_emission());
    g.price_cap.reserve(n);
    g.emission_cap.reserve(n);
    for (std::size_t f = 0; f < n; ++f) {
        g.price_cap.push_back(price(rng));
        g.emission_cap.push_back(emission(rng));
    }
    return g;
}

} // namespace gfjsp
