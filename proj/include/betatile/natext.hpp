#pragma once

#include "betatile/periodic.hpp"
#include "betatile/tile.hpp"

namespace betatile {

// Point of the suspension domain carried by its first coordinate; only
// diagonal points (delta(x) for x in Q(beta)) are represented exactly.
struct NatExtPoint {
    FieldElement x;
    bool as_diagonal = true;
};

// One application of the suspension map to a diagonal point:
// delta(x) -> delta(T(x)).
NatExtPoint nat_ext_step(const NatExtPoint& p);

// Diagonal membership: delta(x) lies in the domain iff x is purely periodic.
bool nat_ext_contains(const FieldElement& x);

// Per-v slice of the domain: the interval [v, v-hat) paired with the level-k
// cloud of delta'(v) - R(v).
struct DomainSlice {
    FieldElement v, v_hat;
    std::vector<FieldElement> points;  // v - p for p in the level-k cloud of R(v)
    int level;
};
std::vector<DomainSlice> domain_slices(const ParryData& parry, int level);

// Monte-Carlo covering-degree diagnostic for the Z[beta]-indexed collection
// of Rauzy fractals on the stripe: samples (arch point, address cylinder),
// counts how many tiles' certified outer boxes contain each sample.
struct CoveringReport {
    std::map<int, long> histogram;  // hit count -> samples
    long samples = 0;
    long out_of_stripe = 0;
    int modal_count = 0;
    double modal_fraction = 0;      // fraction of in-stripe samples at the mode
    long tiles_considered = 0;
};
CoveringReport covering_degree_estimate(const ParryData& parry, int level, long samples,
                                        const QInterval& window, uint64_t seed = 1);

}  // namespace betatile
