#pragma once

#include "betatile/field.hpp"

namespace betatile {

// Window in the archimedean embedding space: a dominant-place interval plus,
// per non-dominant place, a bound |x^(place)| <= bound (complex places use
// the modulus of the representative embedding).
struct EmbeddingWindow {
    QInterval dominant;
    std::vector<Rat> conj_bounds;  // one per conjugate place
};

// All x in Z[beta] whose embeddings may lie in the window (over-inclusive on
// the conjugate bounds by the enclosure width, exact on nothing: callers
// re-filter).  Elements come out sorted by coefficient vector.  Throws
// BoxTooLarge when the scan exceeds the cap.
std::vector<FieldElement> enumerate_lattice_window(const BetaField& field,
                                                   const EmbeddingWindow& window,
                                                   long cap = 1000000);

}  // namespace betatile
