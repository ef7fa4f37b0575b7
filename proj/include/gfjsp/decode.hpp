#ifndef GFJSP_DECODE_HPP
#define GFJSP_DECODE_HPP

#include "gfjsp/genotype.hpp"
#include "gfjsp/schedule.hpp"

namespace gfjsp {

// Escape hatch when an operation cannot be placed within the horizon:
// ExtendHorizon tiles the profile cyclically in 25% increments of the base
// length; RelaxCaps raises the violating cap(s) of that operation to the
// minimal values admitting a start within the horizon.
enum class RelaxMode {
    ExtendHorizon,
    RelaxCaps,
};

// Per-operation diagnostics of a decode run.
struct DecodeInfo {
    // Flat operation ids whose placement needed the relax escape (cap raise or
    // horizon extension beyond the base profile).
    std::vector<std::size_t> relaxed_ops;
    bool extended = false;
};

// Threshold decoder: walks the sequence string and places each operation on
// its machine gene's machine at the earliest start t >= ready such that the
// machine has a free gap of tau consecutive steps (gap insertion allowed) and
// price[s] <= price_cap, emission[s] <= emission_cap on every occupied step.
Schedule decode(const Genotype& g, const EnrichedInstance& e, RelaxMode mode,
                DecodeInfo* info = nullptr);

// Inverse mapping: sequence in ascending start order (ties: machine, then job),
// machine genes from the schedule, caps set to the maximum price/emission over
// each operation's occupied steps.
Genotype encode(const Schedule& s, const EnrichedInstance& e);

} // namespace gfjsp

#endif
