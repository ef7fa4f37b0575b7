#ifndef GFJSP_GENOTYPE_HPP
#define GFJSP_GENOTYPE_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gfjsp/enriched.hpp"

namespace gfjsp {

using Rng = std::mt19937_64;

// Four gene strings of equal length (= total operation count):
//   sequence:     job indices; the n-th occurrence of job i denotes operation (i,n)
//   machine:      per flat operation (job-major), index into its eligible options
//   price_cap:    per flat operation, max tolerated price (EUR/MWh) on occupied steps
//   emission_cap: per flat operation, max tolerated emission factor (gCO2eq/kWh)
struct Genotype {
    std::vector<int> sequence;
    std::vector<int> machine;
    std::vector<double> price_cap;
    std::vector<double> emission_cap;
};

// Empty string when valid; otherwise a description of the first violation.
std::string genotype_violation(const Genotype& g, const Instance& inst);
bool genotype_valid(const Genotype& g, const Instance& inst);

// Uniform random genotype: sequence is a uniform multiset permutation, machine
// genes uniform over options, caps uniform over [min, max] of the profile series.
Genotype random_genotype(const EnrichedInstance& e, Rng& rng);

} // namespace gfjsp

#endif
