#include "gfjsp/nsga3.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "gfjsp/error.hpp"
#include "gfjsp/refine.hpp"

namespace gfjsp {

ReferencePointSet das_dennis(int divisions) {
    if (divisions < 1) throw param_error("divisions must be >= 1");
    ReferencePointSet set;
    set.divisions = divisions;
    const double p = static_cast<double>(divisions);
    for (int a = divisions; a >= 0; --a) {
        for (int b = divisions - a; b >= 0; --b) {
            int c = divisions - a - b;
            set.points.push_back({a / p, b / p, c / p});
        }
    }
    return set;
}

void validate_config(const EvolveConfig& cfg) {
    if (cfg.population_size == 0 || cfg.population_size % 4 != 0)
        throw param_error("population_size must be a positive multiple of 4");
    if (cfg.divisions < 1) throw param_error("divisions must be >= 1");
    if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0)
        throw param_error("crossover_rate must lie in [0, 1]");
    if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0)
        throw param_error("mutation_rate must lie in [0, 1]");
    if (cfg.runtime_limit_seconds < 0.0) throw param_error("runtime_limit_seconds must be >= 0");
}

// --- Variation ---------------------------------------------------------------

std::vector<int> repair_sequence(std::vector<int> sequence, const Instance& inst) {
    std::vector<std::size_t> quota(inst.job_count() + 1, 0);
    for (const auto& job : inst.jobs())
        quota[static_cast<std::size_t>(job.index)] = job.operations.size();

    std::vector<std::size_t> seen(inst.job_count() + 1, 0);
    std::vector<bool> surplus(sequence.size(), false);
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        std::size_t job = static_cast<std::size_t>(sequence[i]);
        if (++seen[job] > quota[job]) surplus[i] = true;
    }

    std::vector<std::size_t> deficit(inst.job_count() + 1, 0);
    for (std::size_t j = 1; j < quota.size(); ++j)
        deficit[j] = quota[j] > seen[j] ? quota[j] - seen[j] : 0;

    std::size_t next_missing = 1;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (!surplus[i]) continue;
        while (next_missing < deficit.size() && deficit[next_missing] == 0) ++next_missing;
        sequence[i] = static_cast<int>(next_missing);
        --deficit[next_missing];
    }
    return sequence;
}

std::pair<Genotype, Genotype> two_point_crossover(const Genotype& a, const Genotype& b,
                                                  const Instance& inst, Rng& rng) {
    const std::size_t n = a.sequence.size();
    std::uniform_int_distribution<std::size_t> pick(0, n);
    std::size_t c1 = pick(rng);
    std::size_t c2 = pick(rng);
    while (c2 == c1) c2 = pick(rng);
    if (c1 > c2) std::swap(c1, c2);
    return two_point_crossover_at(a, b, inst, c1, c2);
}

std::pair<Genotype, Genotype> two_point_crossover_at(const Genotype& a, const Genotype& b,
                                                     const Instance& inst, std::size_t c1,
                                                     std::size_t c2) {
    Genotype x = a;
    Genotype y = b;
    auto swap_mid = [&](auto& u, auto& v) {
        for (std::size_t i = c1; i < c2; ++i) std::swap(u[i], v[i]);
    };
    swap_mid(x.sequence, y.sequence);
    swap_mid(x.machine, y.machine);
    swap_mid(x.price_cap, y.price_cap);
    swap_mid(x.emission_cap, y.emission_cap);

    x.sequence = repair_sequence(std::move(x.sequence), inst);
    y.sequence = repair_sequence(std::move(y.sequence), inst);
    return {std::move(x), std::move(y)};
}

Genotype mutate(const Genotype& g, const EnrichedInstance& e, Rng& rng, double rate) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) >= rate) return g;

    Genotype out = g;
    const std::size_t n = out.sequence.size();
    std::uniform_int_distribution<int> move(0, 2);
    switch (move(rng)) {
        case 0: {
            if (n < 2) break;
            std::uniform_int_distribution<std::size_t> pos(0, n - 1);
            std::size_t i = pos(rng);
            std::size_t j = pos(rng);
            while (j == i) j = pos(rng);
            std::swap(out.sequence[i], out.sequence[j]);
            break;
        }
        case 1: {
            std::uniform_int_distribution<std::size_t> pos(0, n - 1);
            std::size_t f = pos(rng);
            const auto& options = e.instance().operation(f).options;
            std::uniform_int_distribution<std::size_t> opt(0, options.size() - 1);
            out.machine[f] = static_cast<int>(opt(rng));
            break;
        }
        default: {
            std::uniform_int_distribution<std::size_t> pos(0, n - 1);
            std::size_t f = pos(rng);
            std::uniform_int_distribution<int> which(0, 1);
            if (which(rng) == 0) {
                std::uniform_real_distribution<double> v(e.profile().min_price(),
                                                         e.profile().max_price());
                out.price_cap[f] = v(rng);
            } else {
                std::uniform_real_distribution<double> v(e.profile().min_emission(),
                                                         e.profile().max_emission());
                out.emission_cap[f] = v(rng);
            }
            break;
        }
    }
    return out;
}

// --- Selection machinery -------------------------------------------------------

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    const std::vector<ObjectiveVector>& objs) {
    const std::size_t n = objs.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(objs[i], objs[j])) {
                dominated[i].push_back(j);
                ++count[j];
            } else if (dominates(objs[j], objs[i])) {
                dominated[j].push_back(i);
                ++count[i];
            }
        }
    }
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (count[i] == 0) current.push_back(i);

    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated[i]) {
                if (--count[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

namespace {

double asf(const std::array<double, 3>& x, int axis) {
    constexpr double eps = 1e-6;
    double best = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < 3; ++c) {
        double w = c == axis ? 1.0 : eps;
        best = std::max(best, x[static_cast<std::size_t>(c)] / w);
    }
    return best;
}

std::array<double, 3> objective_array(const ObjectiveVector& o) {
    return {static_cast<double>(o.makespan), o.energy_cost_eur, o.emissions_g};
}

// Solves A x = (1,1,1) by Gaussian elimination; false on a singular system.
bool solve_hyperplane(std::array<std::array<double, 3>, 3> a, std::array<double, 3>& x) {
    std::array<double, 3> b{1.0, 1.0, 1.0};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
                pivot = r;
        if (std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]) < 1e-12)
            return false;
        std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
        std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(pivot)]);
        for (int r = col + 1; r < 3; ++r) {
            double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                       a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
            for (int c = col; c < 3; ++c)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double v = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < 3; ++c)
            v -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                 x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(r)] = v / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
    }
    return true;
}

} // namespace

NormalizationInfo normalize(std::vector<Individual>& pool) {
    if (pool.empty()) throw param_error("normalize requires a non-empty pool");

    NormalizationInfo info;
    for (int c = 0; c < 3; ++c) {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& ind : pool)
            m = std::min(m, objective_array(ind.objectives)[static_cast<std::size_t>(c)]);
        info.ideal[static_cast<std::size_t>(c)] = m;
    }

    std::vector<std::array<double, 3>> translated(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        auto o = objective_array(pool[i].objectives);
        for (std::size_t c = 0; c < 3; ++c) translated[i][c] = o[c] - info.ideal[c];
    }

    std::array<std::size_t, 3> extreme{};
    for (int axis = 0; axis < 3; ++axis) {
        std::size_t best = 0;
        double best_v = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double v = asf(translated[i], axis);
            if (v < best_v) {
                best_v = v;
                best = i;
            }
        }
        extreme[static_cast<std::size_t>(axis)] = best;
    }

    bool ok = extreme[0] != extreme[1] && extreme[0] != extreme[2] && extreme[1] != extreme[2];
    std::array<double, 3> plane{};
    if (ok)
        ok = solve_hyperplane({translated[extreme[0]], translated[extreme[1]],
                               translated[extreme[2]]},
                              plane);
    if (ok) {
        for (std::size_t c = 0; c < 3; ++c) {
            if (plane[c] <= 1e-12) {
                ok = false;
                break;
            }
            info.intercepts[c] = 1.0 / plane[c];
        }
    }
    if (!ok) {
        info.nadir_fallback = true;
        for (std::size_t c = 0; c < 3; ++c) {
            double m = 0.0;
            for (const auto& t : translated) m = std::max(m, t[c]);
            info.intercepts[c] = m > 0.0 ? m : 1.0;
        }
    }

    for (std::size_t i = 0; i < pool.size(); ++i)
        for (std::size_t c = 0; c < 3; ++c)
            pool[i].normalized[c] = translated[i][c] / info.intercepts[c];
    return info;
}

void associate(std::vector<Individual>& pool, const ReferencePointSet& refs) {
    if (refs.points.empty()) throw param_error("associate requires reference points");
    for (auto& ind : pool) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < refs.points.size(); ++r) {
            const auto& ref = refs.points[r];
            double dot = 0.0, norm2 = 0.0;
            for (std::size_t c = 0; c < 3; ++c) {
                dot += ind.normalized[c] * ref[c];
                norm2 += ref[c] * ref[c];
            }
            double k = dot / norm2;
            double d2 = 0.0;
            for (std::size_t c = 0; c < 3; ++c) {
                double diff = ind.normalized[c] - k * ref[c];
                d2 += diff * diff;
            }
            double d = std::sqrt(d2);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(r);
            }
        }
        ind.niche = best;
        ind.distance = best_d;
    }
}

std::vector<std::size_t> niche_select(const std::vector<Individual>& pool,
                                      const std::vector<std::size_t>& last_front, std::size_t k,
                                      std::vector<std::size_t>& niche_counts, Rng& rng) {
    if (k > last_front.size())
        throw param_error("niche selection asked for " + std::to_string(k) + " of " +
                          std::to_string(last_front.size()) + " candidates");

    std::vector<std::vector<std::size_t>> members(niche_counts.size());
    for (std::size_t idx : last_front)
        members[static_cast<std::size_t>(pool[idx].niche)].push_back(idx);

    // Memetic refinement floods the pool with objective-identical individuals;
    // the random pick favors vectors not selected yet in this call so that
    // duplicate crowds cannot evict the sole holder of a front point.
    std::vector<ObjectiveVector> taken;
    auto already_taken = [&](const ObjectiveVector& o) {
        return std::find(taken.begin(), taken.end(), o) != taken.end();
    };

    std::vector<bool> excluded(niche_counts.size(), false);
    std::vector<std::size_t> selected;
    selected.reserve(k);

    while (selected.size() < k) {
        std::size_t min_count = std::numeric_limits<std::size_t>::max();
        for (std::size_t n = 0; n < niche_counts.size(); ++n)
            if (!excluded[n]) min_count = std::min(min_count, niche_counts[n]);

        std::vector<std::size_t> tied;
        for (std::size_t n = 0; n < niche_counts.size(); ++n)
            if (!excluded[n] && niche_counts[n] == min_count) tied.push_back(n);

        std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
        std::size_t niche = tied[pick(rng)];

        auto& cands = members[niche];
        if (cands.empty()) {
            excluded[niche] = true;
            continue;
        }

        std::vector<std::size_t> pick_from;
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (!already_taken(pool[cands[i]].objectives)) pick_from.push_back(i);
        if (pick_from.empty())
            for (std::size_t i = 0; i < cands.size(); ++i) pick_from.push_back(i);

        std::size_t chosen;
        if (niche_counts[niche] == 0) {
            std::size_t best = pick_from[0];
            for (std::size_t i : pick_from)
                if (pool[cands[i]].distance < pool[cands[best]].distance) best = i;
            chosen = best;
        } else {
            std::uniform_int_distribution<std::size_t> c(0, pick_from.size() - 1);
            chosen = pick_from[c(rng)];
        }
        taken.push_back(pool[cands[chosen]].objectives);
        selected.push_back(cands[chosen]);
        cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(chosen));
        ++niche_counts[niche];
    }
    return selected;
}

// --- Generational loop ----------------------------------------------------------

Refiner memetic_refiner() {
    return [](const Schedule& s, const EnrichedInstance& e) {
        RefineResult r = local_refine(s, e);
        return std::vector<Genotype>{encode(r.cost_child, e), encode(r.emission_child, e)};
    };
}

namespace {

RelaxMode mode_of(std::size_t generation) {
    return generation % 2 == 0 ? RelaxMode::ExtendHorizon : RelaxMode::RelaxCaps;
}

void evaluate_individual(Individual& ind, const EnrichedInstance& e, RelaxMode mode) {
    ind.schedule = decode(ind.genotype, e, mode);
    ind.objectives = evaluate(ind.schedule, e);
}

// Ranks, normalized coordinates, niches and distances for a whole pool.
void annotate_pool(std::vector<Individual>& pool, const ReferencePointSet& refs) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pool.size());
    for (const auto& ind : pool) objs.push_back(ind.objectives);
    auto fronts = fast_nondominated_sort(objs);
    for (std::size_t f = 0; f < fronts.size(); ++f)
        for (std::size_t idx : fronts[f]) pool[idx].rank = f;
    normalize(pool);
    associate(pool, refs);
}

std::size_t tournament(const std::vector<Individual>& pool, std::size_t a, std::size_t b) {
    if (pool[a].rank != pool[b].rank) return pool[a].rank < pool[b].rank ? a : b;
    if (pool[a].distance != pool[b].distance) return pool[a].distance < pool[b].distance ? a : b;
    return a;
}

std::vector<std::size_t> tournament_winners(const std::vector<Individual>& pool, Rng& rng) {
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> winners;
    winners.reserve(pool.size() / 2);
    for (std::size_t i = 0; i + 1 < order.size(); i += 2)
        winners.push_back(tournament(pool, order[i], order[i + 1]));
    return winners;
}

// Alg. 1 environmental selection: fill whole fronts, then niche the split front.
std::vector<Individual> environmental_selection(std::vector<Individual> pool, std::size_t n,
                                                const ReferencePointSet& refs, Rng& rng) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pool.size());
    for (const auto& ind : pool) objs.push_back(ind.objectives);
    auto fronts = fast_nondominated_sort(objs);

    std::vector<std::size_t> chosen;
    std::size_t split = 0;
    std::size_t pool_count = 0;
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        for (std::size_t idx : fronts[f]) pool[idx].rank = f;
        if (pool_count < n) {
            split = f;
            pool_count += fronts[f].size();
        }
    }

    // S_t = F_1 .. F_split; normalization and association run on S_t.
    std::vector<Individual> st;
    std::vector<std::size_t> st_ids;
    for (std::size_t f = 0; f <= split; ++f)
        for (std::size_t idx : fronts[f]) st_ids.push_back(idx);
    for (std::size_t idx : st_ids) st.push_back(pool[idx]);
    normalize(st);
    associate(st, refs);
    for (std::size_t i = 0; i < st_ids.size(); ++i) {
        pool[st_ids[i]].normalized = st[i].normalized;
        pool[st_ids[i]].niche = st[i].niche;
        pool[st_ids[i]].distance = st[i].distance;
    }

    for (std::size_t f = 0; f < split; ++f)
        for (std::size_t idx : fronts[f]) chosen.push_back(idx);

    if (pool_count == n) {
        for (std::size_t idx : fronts[split]) chosen.push_back(idx);
    } else {
        std::vector<std::size_t> counts(refs.points.size(), 0);
        for (std::size_t idx : chosen) ++counts[static_cast<std::size_t>(pool[idx].niche)];
        auto filled = niche_select(pool, fronts[split], n - chosen.size(), counts, rng);
        chosen.insert(chosen.end(), filled.begin(), filled.end());
    }

    std::vector<Individual> next;
    next.reserve(n);
    for (std::size_t idx : chosen) next.push_back(std::move(pool[idx]));
    return next;
}

std::vector<ObjectiveVector> front_of(const std::vector<Individual>& population) {
    std::vector<ObjectiveVector> objs;
    objs.reserve(population.size());
    for (const auto& ind : population) objs.push_back(ind.objectives);
    auto fronts = fast_nondominated_sort(objs);
    std::vector<ObjectiveVector> out;
    for (std::size_t idx : fronts.front()) out.push_back(objs[idx]);
    std::sort(out.begin(), out.end(), objective_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

EvolveResult run_evolution(const EnrichedInstance& e, const EvolveConfig& cfg,
                           const Refiner& refiner, const GenerationCallback& callback) {
    validate_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    auto out_of_time = [&]() {
        if (cfg.runtime_limit_seconds <= 0.0) return false;
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
        return elapsed.count() >= cfg.runtime_limit_seconds;
    };

    Rng rng(cfg.seed);
    const ReferencePointSet refs = das_dennis(cfg.divisions);
    const std::size_t n = cfg.population_size;

    std::vector<Individual> population(n);
    for (auto& ind : population) ind.genotype = random_genotype(e, rng);
    for (auto& ind : population) evaluate_individual(ind, e, mode_of(0));

    EvolveResult result;
    std::size_t gen = 0;
    for (; gen < cfg.generation_limit; ++gen) {
        const RelaxMode mode = mode_of(gen);
        if (gen > 0)
            for (auto& ind : population) evaluate_individual(ind, e, mode);
        if (out_of_time()) {
            result.stopped_by_time = true;
            break;
        }

        annotate_pool(population, refs);

        auto parents_a = tournament_winners(population, rng);
        auto parents_b = tournament_winners(population, rng);

        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::vector<Individual> offspring;
        offspring.reserve(n);
        for (std::size_t i = 0; i < parents_a.size(); ++i) {
            const Genotype& pa = population[parents_a[i]].genotype;
            const Genotype& pb = population[parents_b[i]].genotype;
            Genotype ca, cb;
            if (coin(rng) < cfg.crossover_rate) {
                auto pair = two_point_crossover(pa, pb, e.instance(), rng);
                ca = std::move(pair.first);
                cb = std::move(pair.second);
            } else {
                ca = pa;
                cb = pb;
            }
            ca = mutate(ca, e, rng, cfg.mutation_rate);
            cb = mutate(cb, e, rng, cfg.mutation_rate);
            Individual ia, ib;
            ia.genotype = std::move(ca);
            ib.genotype = std::move(cb);
            evaluate_individual(ia, e, mode);
            evaluate_individual(ib, e, mode);
            offspring.push_back(std::move(ia));
            offspring.push_back(std::move(ib));
        }

        std::vector<Individual> refined;
        if (refiner) {
            for (const auto& child : offspring) {
                for (auto& g : refiner(child.schedule, e)) {
                    Individual ind;
                    ind.genotype = std::move(g);
                    evaluate_individual(ind, e, mode);
                    refined.push_back(std::move(ind));
                }
            }
        }

        std::vector<Individual> pool;
        pool.reserve(population.size() + offspring.size() + refined.size());
        for (auto& ind : population) pool.push_back(std::move(ind));
        for (auto& ind : offspring) pool.push_back(std::move(ind));
        for (auto& ind : refined) pool.push_back(std::move(ind));

        population = environmental_selection(std::move(pool), n, refs, rng);

        if (callback) {
            GenerationStats stats;
            stats.generation = gen;
            stats.mode = mode;
            stats.front = front_of(population);
            stats.population_size = population.size();
            stats.population = &population;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& ind : population) best = std::min(best, ind.objectives.energy_cost_eur);
            stats.best_cost = best;
            if (callback(stats)) {
                ++gen;
                break;
            }
        }
        if (out_of_time()) {
            result.stopped_by_time = true;
            ++gen;
            break;
        }
    }
    result.generations_run = gen;

    // F1 of the final population, deduplicated by objective vector.
    std::vector<ObjectiveVector> objs;
    objs.reserve(population.size());
    for (const auto& ind : population) objs.push_back(ind.objectives);
    auto fronts = fast_nondominated_sort(objs);
    for (std::size_t idx : fronts.front()) {
        FrontMember m;
        m.objectives = population[idx].objectives;
        m.schedule = population[idx].schedule;
        m.genotype = population[idx].genotype;
        front_insert(result.front, std::move(m));
    }
    canonicalize(result.front);
    return result;
}

} // namespace gfjsp
