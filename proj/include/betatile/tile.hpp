#pragma once

#include "betatile/dynamics.hpp"

namespace betatile {

enum class TileKind { Rauzy, Integral };

// Level-k point-cloud approximant of a Rauzy fractal R(x) or an integral
// beta-tile S(x): the exact point set beta^k T^-k(x) (resp. its Z[beta]
// restriction), with embedded coordinates and finite-place addresses.
struct TileCloud {
    const BetaField* field;
    FieldElement base_point;
    int level;
    TileKind kind;
    std::vector<FieldElement> points;            // sorted by coefficient vector
    std::vector<FieldElement> preimages;         // beta^-level * point, parallel
    std::vector<std::vector<int>> addresses;     // depth-level digits; empty when not integral

    size_t size() const { return points.size(); }
};

// beta^k T^-k(x) for x in Z[beta^-1] n [0,1); includes x itself.
TileCloud rauzy_cloud(const FieldElement& x, int level, int level_cap = 14,
                      bool with_addresses = true);

// beta^k (T^-k(x) n Z[beta]) for x in Z[beta] n [0,1).
TileCloud integral_cloud(const FieldElement& x, int level, int level_cap = 18,
                         bool with_addresses = true);

// Exact check of the level-k translation identity
//   beta^k T^-k(x) - x == beta^k T^-k(v) - v   for x in [v, v-hat).
bool translation_identity_check(const ParryData& parry, const FieldElement& x,
                                const FieldElement& v, int level);

// A-priori bound (ceil(beta)-1) * ||beta^k|| at the non-dominant places for
// the one-sided Hausdorff defect between consecutive levels, and the measured
// defect of the embedded coordinates.
struct HausdorffDefect {
    Rat bound;        // rigorous upper bound
    double measured;  // numeric one-sided defect (new level vs old)
};
HausdorffDefect hausdorff_defect(const TileCloud& level_k, const TileCloud& level_k1);

// Translated copies of the level-k cloud of R(0), one per element of L;
// emits QMViolated unless (QM) holds or allow_without_qm is set.
std::vector<TileCloud> periodic_patch(const ParryData& parry,
                                      const std::vector<FieldElement>& translates,
                                      int level, bool allow_without_qm = false);

// Certified per-class bounds for the archimedean extent of R(v) - delta'(v):
// at a real place, sup/inf of the projection; at a complex place the same
// radius bound per axis.  Computed by a downward fixpoint on the set
// equation; used for tight outer boxes around cloud points.
struct ClassExtents {
    // [place][v_index] -> interval [lo, hi] bounding the projection of
    // R(v) - delta'(v) (for complex places: both axes bounded by hi = -lo)
    std::vector<std::vector<QInterval>> extent;
};
ClassExtents class_extents(const ParryData& parry, int iterations = 60);

// Outer box for the subtree hanging at cloud point p (arch places only):
// p^(place) + beta^(place)^k * extent(class of T^-k-preimage).
std::vector<QInterval> point_outer_box_real(const ParryData& parry,
                                            const ClassExtents& ext,
                                            const FieldElement& point, int level);
// same, using the cloud's stored preimage to avoid the beta^-k division
std::vector<QInterval> point_outer_box_real(const ParryData& parry,
                                            const ClassExtents& ext,
                                            const TileCloud& cloud, size_t index);

}  // namespace betatile
