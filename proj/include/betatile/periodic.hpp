#pragma once

#include "betatile/dynamics.hpp"
#include "betatile/tile.hpp"

#include <map>
#include <optional>

namespace betatile {

struct PurityReport {
    FieldElement x;
    bool purely_periodic;
    int preperiod;
    int period;
    std::vector<FieldElement> orbit;  // x, T(x), ... up to the first repeat
};

// Exact orbit iteration with cycle detection on coefficient vectors.
PurityReport is_purely_periodic(const FieldElement& x, long cap = 100000);

// P = Pur(beta) n Z[beta]: all purely periodic points of Z[beta] n [0,1).
// Conjugates of purely periodic points are bounded by the tail bound, so a
// lattice window scan suffices.
std::vector<FieldElement> pur_set_integral(const ParryData& parry, long cap = 1000000);

struct WWitness {
    FieldElement y;
    int n;
};

// Weak finiteness search: for each x in P find y, n with
// T^n(x+y) = T^n(y) = 0, y in [0, 1-x).  Empty optional = Unknown.
struct WReport {
    std::vector<FieldElement> P;
    std::vector<std::optional<WWitness>> witnesses;  // parallel to P
    bool all_found;
};
WReport check_W(const ParryData& parry, int y_depth, int n_cap);

// The recursive exclusive-point construction: z in Z[beta^-1] n [0, inf)
// with T^N(x + beta^-N z) = 0 for all x in P, each identity verified exactly.
struct ExclusivePoint {
    FieldElement z;
    int total_steps;                       // N = k_1 + ... + k_h
    std::vector<FieldElement> identities;  // the verified T^N(x + beta^-N z), all zero
};
ExclusivePoint exclusive_point(const ParryData& parry, const WReport& witnesses,
                               int y_depth = 14, int n_cap = 24);

enum class GammaMethod { QuadraticFormula, Thm5Numeric, Scan };

struct GammaResult {
    GammaMethod method;
    std::optional<FieldElement> exact_value;
    QInterval enclosure;               // decimal enclosure of the value / bound
    bool exact;                        // true when the value is known exact
    // scan data
    std::optional<Rat> largest_verified;   // all admissible rationals below are pp
    std::optional<Rat> first_non_pp;       // smallest non-pp rational found
    long rationals_tested = 0;
    bool shortcut_positive_conjugate = false;
};

// Exact value for beta^2 = a beta + b, a >= b >= 1:
// max{0, 1 - (b-1) b beta / (beta^2 - b^2)}; exact iff gcd(a,b) = 1.
GammaResult gamma_quadratic(long a, long b, unsigned precision_bits = 128);

// Farey scan over p/q with gcd(q, N(beta)) = 1, q <= max_denominator.
GammaResult gamma_scan(const BetaField& field, long max_denominator);

// Certified sandwich for the right-hand side of the gamma bound via level-k
// cloud covers of R(v).  grid_steps controls the rational scan resolution.
struct GammaSandwich {
    Rat lo, hi;
    bool found_escape;   // false => LevelTooLow advisory, hi = 1
    int level;
};
GammaSandwich gamma_lower_bound_thm5(const ParryData& parry, int level,
                                     long grid_steps = 4096);

}  // namespace betatile
