#ifndef GFJSP_NSGA3_HPP
#define GFJSP_NSGA3_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gfjsp/decode.hpp"
#include "gfjsp/genotype.hpp"
#include "gfjsp/pareto.hpp"

namespace gfjsp {

struct Individual {
    Genotype genotype;
    Schedule schedule;
    ObjectiveVector objectives;
    std::array<double, 3> normalized{};
    int niche = -1;
    double distance = 0.0;
    std::size_t rank = 0;
};

// Das-Dennis simplex lattice for three objectives: all points (a/p, b/p, c/p)
// with a+b+c = p; C(p+2, 2) points in total.
struct ReferencePointSet {
    std::vector<std::array<double, 3>> points;
    int divisions = 0;
};

ReferencePointSet das_dennis(int divisions);

struct EvolveConfig {
    std::size_t population_size = 92; // must be a positive multiple of 4
    int divisions = 12;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    std::size_t generation_limit = 200;
    double runtime_limit_seconds = 0.0; // 0 disables the wall-clock limit
    std::uint64_t seed = 1;
};

void validate_config(const EvolveConfig& cfg);

// --- Variation operators ---------------------------------------------------

// Two-point crossover with identical cut positions on all four gene strings;
// sequence children are repaired afterwards.
std::pair<Genotype, Genotype> two_point_crossover(const Genotype& a, const Genotype& b,
                                                  const Instance& inst, Rng& rng);

// Same with explicit distinct cut positions 0 <= c1 < c2 <= length.
std::pair<Genotype, Genotype> two_point_crossover_at(const Genotype& a, const Genotype& b,
                                                     const Instance& inst, std::size_t c1,
                                                     std::size_t c2);

// Left-to-right repair: keep the first nu_i occurrences of each job, replace
// each surplus occurrence by the lowest-indexed job still missing occurrences.
std::vector<int> repair_sequence(std::vector<int> sequence, const Instance& inst);

// With probability `rate`, applies one uniformly chosen move: swap two
// sequence genes, reassign one machine gene, or resample one cap gene from the
// profile's [min, max].
Genotype mutate(const Genotype& g, const EnrichedInstance& e, Rng& rng, double rate);

// --- Selection machinery ----------------------------------------------------

// Deb's fast non-dominated sort; front lists hold indices into `objs`.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<ObjectiveVector>& objs);

struct NormalizationInfo {
    std::array<double, 3> ideal{};
    std::array<double, 3> intercepts{};
    bool nadir_fallback = false;
};

// Translates by the ideal point and divides by hyperplane intercepts built
// from achievement-scalarizing extreme points; degenerate hyperplanes fall
// back to the translated pool's component-wise maxima. Fills `normalized`.
NormalizationInfo normalize(std::vector<Individual>& pool);

// Associates each individual with the reference line of minimal perpendicular
// distance (ties: lowest reference index). Fills `niche` and `distance`.
void associate(std::vector<Individual>& pool, const ReferencePointSet& refs);

// Niche-filling selection of `k` members from the last front. `niche_counts`
// holds per-reference counts of already-selected members and is updated.
// Candidates must carry valid niche/distance fields.
std::vector<std::size_t> niche_select(const std::vector<Individual>& pool,
                                      const std::vector<std::size_t>& last_front, std::size_t k,
                                      std::vector<std::size_t>& niche_counts, Rng& rng);

// --- Generational loop -------------------------------------------------------

// Maps an offspring's decoded schedule to extra genotypes entering R_t.
using Refiner =
    std::function<std::vector<Genotype>(const Schedule&, const EnrichedInstance&)>;

// Greedy local refinement wired through encode(): the standard memetic hook.
Refiner memetic_refiner();

struct GenerationStats {
    std::size_t generation = 0;
    RelaxMode mode = RelaxMode::ExtendHorizon;
    std::vector<ObjectiveVector> front; // canonical objective set of F1
    double best_cost = 0.0;
    std::size_t population_size = 0;
    const std::vector<Individual>* population = nullptr; // valid during the callback
};

// Returns true to stop the run after this generation.
using GenerationCallback = std::function<bool(const GenerationStats&)>;

struct EvolveResult {
    ParetoFront front;
    std::size_t generations_run = 0;
    bool stopped_by_time = false;
};

// The memetic NSGA-III loop. Each generation re-decodes the whole pool under
// that generation's relax mode (even index: extend-horizon, odd: relax-caps),
// varies via tournament pairing + crossover + mutation, refines offspring
// through `refiner`, and selects N survivors via front filling and niching.
EvolveResult run_evolution(const EnrichedInstance& e, const EvolveConfig& cfg,
                           const Refiner& refiner = {}, const GenerationCallback& callback = {});

} // namespace gfjsp

#endif
