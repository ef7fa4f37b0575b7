#include "gfjsp/decode.hpp"

#include <algorithm>
#include <optional>

#include "gfjsp/error.hpp"

namespace gfjsp {

namespace {

// Disjoint busy intervals of one machine, sorted by start.
struct MachineTimeline {
    std::vector<std::pair<std::size_t, std::size_t>> busy;

    void insert(std::size_t s, std::size_t e) {
        auto it = std::lower_bound(busy.begin(), busy.end(), std::make_pair(s, e));
        busy.insert(it, {s, e});
    }

    std::size_t last_end() const { return busy.empty() ? 0 : busy.back().second; }
};

struct CapWindow {
    const EnergyProfile* profile;
    double price_cap;
    double emission_cap;
    int tau;

    bool step_ok(std::size_t s) const {
        return profile->price_at(s) <= price_cap && profile->emission_at(s) <= emission_cap;
    }

    // Last violating step within [t, t+tau), or nullopt when the window is clean.
    std::optional<std::size_t> last_violation(std::size_t t) const {
        std::optional<std::size_t> v;
        for (std::size_t s = t; s < t + static_cast<std::size_t>(tau); ++s)
            if (!step_ok(s)) v = s;
        return v;
    }

    double window_max_price(std::size_t t) const {
        double m = profile->price_at(t);
        for (std::size_t s = t + 1; s < t + static_cast<std::size_t>(tau); ++s)
            m = std::max(m, profile->price_at(s));
        return m;
    }

    double window_max_emission(std::size_t t) const {
        double m = profile->emission_at(t);
        for (std::size_t s = t + 1; s < t + static_cast<std::size_t>(tau); ++s)
            m = std::max(m, profile->emission_at(s));
        return m;
    }
};

// Earliest start >= ready whose tau-step window fits a machine gap within
// horizon and satisfies the caps. Violating steps are skipped past wholesale.
std::optional<std::size_t> find_earliest(const MachineTimeline& tl, std::size_t ready,
                                         const CapWindow& w, std::size_t horizon) {
    const std::size_t tau = static_cast<std::size_t>(w.tau);
    if (tau > horizon) return std::nullopt;

    auto scan_range = [&](std::size_t lo, std::size_t hi) -> std::optional<std::size_t> {
        // Candidate starts in [lo, hi], window must end by hi + tau.
        std::size_t t = std::max(lo, ready);
        while (t <= hi) {
            auto viol = w.last_violation(t);
            if (!viol) return t;
            t = *viol + 1;
        }
        return std::nullopt;
    };

    std::size_t gap_start = 0;
    for (const auto& [bs, be] : tl.busy) {
        if (bs >= gap_start + tau) {
            if (auto t = scan_range(gap_start, std::min(bs, horizon) - tau)) return t;
        }
        gap_start = std::max(gap_start, be);
        if (gap_start + tau > horizon) return std::nullopt;
    }
    if (gap_start + tau <= horizon)
        if (auto t = scan_range(gap_start, horizon - tau)) return t;
    return std::nullopt;
}

// All machine-feasible starts in [ready, horizon - tau] ignoring caps.
std::vector<std::size_t> machine_feasible_starts(const MachineTimeline& tl, std::size_t ready,
                                                 std::size_t tau, std::size_t horizon) {
    std::vector<std::size_t> out;
    if (tau > horizon) return out;
    std::size_t gap_start = 0;
    auto emit = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = std::max(lo, ready); t <= hi; ++t) out.push_back(t);
    };
    for (const auto& [bs, be] : tl.busy) {
        if (bs >= gap_start + tau) emit(gap_start, std::min(bs, horizon) - tau);
        gap_start = std::max(gap_start, be);
        if (gap_start + tau > horizon) return out;
    }
    if (gap_start + tau <= horizon) emit(gap_start, horizon - tau);
    return out;
}

// True when some window of tau consecutive steps in the cyclic tiling of the
// base profile satisfies the caps. If false, no horizon extension can help.
bool caps_ever_satisfiable(const EnergyProfile& profile, const CapWindow& w) {
    for (std::size_t r = 0; r < profile.size(); ++r)
        if (!w.last_violation(r)) return true;
    return false;
}

std::size_t round_up_to_increment(std::size_t needed, std::size_t base, std::size_t inc) {
    std::size_t h = base;
    while (h < needed) h += inc;
    return h;
}

} // namespace

Schedule decode(const Genotype& g, const EnrichedInstance& e, RelaxMode mode, DecodeInfo* info) {
    if (auto why = genotype_violation(g, e.instance()); !why.empty())
        throw param_error("invalid genotype: " + why);

    const Instance& inst = e.instance();
    const EnergyProfile& profile = e.profile();
    const std::size_t base_horizon = e.horizon();
    const std::size_t increment = (base_horizon + 3) / 4;
    std::size_t horizon = base_horizon;

    std::vector<MachineTimeline> machines(static_cast<std::size_t>(inst.machine_count()) + 1);
    std::vector<int> next_position(inst.job_count() + 1, 1);
    std::vector<std::size_t> job_ready(inst.job_count() + 1, 0);

    Schedule s;
    s.placements.resize(inst.total_operations());

    for (int job : g.sequence) {
        const int pos = next_position[static_cast<std::size_t>(job)]++;
        const std::size_t flat = inst.flat_index(job, pos);
        const OperationSpec& op = inst.operation(flat);
        const MachineOption& chosen = op.options[static_cast<std::size_t>(g.machine[flat])];
        const std::size_t tau = static_cast<std::size_t>(chosen.duration);
        MachineTimeline& tl = machines[static_cast<std::size_t>(chosen.machine)];
        const std::size_t ready = job_ready[static_cast<std::size_t>(job)];

        CapWindow caps{&profile, g.price_cap[flat], g.emission_cap[flat], chosen.duration};

        std::optional<std::size_t> start = find_earliest(tl, ready, caps, horizon);

        if (!start) {
            if (info) info->relaxed_ops.push_back(flat);

            const bool satisfiable = caps_ever_satisfiable(profile, caps);
            if (mode == RelaxMode::ExtendHorizon && satisfiable) {
                // Unscanned starts lie past the machine tail or straddle the old
                // horizon end; within one extra period a clean window must appear.
                std::size_t floor = std::max(ready, tl.last_end());
                if (horizon >= tau) floor = std::max(floor, horizon - tau + 1);
                std::size_t found = floor;
                while (caps.last_violation(found)) ++found;
                horizon = round_up_to_increment(found + tau, horizon, increment);
                start = found;
            } else {
                // Raise the violating cap(s) minimally; extend first if not even
                // machine capacity admits a start (caps cannot fix that).
                std::size_t need = std::max(ready, tl.last_end()) + tau;
                if (need > horizon) horizon = round_up_to_increment(need, horizon, increment);

                auto candidates = machine_feasible_starts(tl, ready, tau, horizon);
                double raised_price = caps.window_max_price(candidates.front());
                for (std::size_t t : candidates)
                    raised_price = std::min(raised_price, caps.window_max_price(t));
                raised_price = std::max(raised_price, caps.price_cap);

                double raised_emission = -1.0;
                for (std::size_t t : candidates) {
                    if (caps.window_max_price(t) > raised_price) continue;
                    double we = std::max(caps.window_max_emission(t), caps.emission_cap);
                    if (raised_emission < 0.0 || we < raised_emission) raised_emission = we;
                }

                CapWindow raised{&profile, raised_price, raised_emission, chosen.duration};
                start = find_earliest(tl, ready, raised, horizon);
            }
        }

        OpPlacement& p = s.placements[flat];
        p.job = job;
        p.position = pos;
        p.machine = chosen.machine;
        p.start = *start;
        p.end = *start + tau;
        tl.insert(p.start, p.end);
        job_ready[static_cast<std::size_t>(job)] = p.end;
    }

    s.horizon_used = horizon;
    if (info) info->extended = horizon > base_horizon;
    return s;
}

Genotype encode(const Schedule& s, const EnrichedInstance& e) {
    const Instance& inst = e.instance();
    std::vector<const OpPlacement*> order;
    order.reserve(s.placements.size());
    for (const auto& p : s.placements) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const OpPlacement* a, const OpPlacement* b) {
        return std::tie(a->start, a->machine, a->job) < std::tie(b->start, b->machine, b->job);
    });

    Genotype g;
    g.sequence.reserve(order.size());
    for (const OpPlacement* p : order) g.sequence.push_back(p->job);

    g.machine.resize(inst.total_operations(), 0);
    g.price_cap.resize(inst.total_operations(), 0.0);
    g.emission_cap.resize(inst.total_operations(), 0.0);
    const EnergyProfile& profile = e.profile();
    for (const auto& p : s.placements) {
        std::size_t flat = inst.flat_index(p.job, p.position);
        const auto& options = inst.operation(flat).options;
        for (std::size_t o = 0; o < options.size(); ++o)
            if (options[o].machine == p.machine) g.machine[flat] = static_cast<int>(o);
        double pc = profile.price_at(p.start);
        double ec = profile.emission_at(p.start);
        for (std::size_t step = p.start + 1; step < p.end; ++step) {
            pc = std::max(pc, profile.price_at(step));
            ec = std::max(ec, profile.emission_at(step));
        }
        g.price_cap[flat] = pc;
        g.emission_cap[flat] = ec;
    }
    return g;
}

} // namespace gfjsp
