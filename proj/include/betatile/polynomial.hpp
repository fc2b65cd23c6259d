#pragma once

#include "betatile/numeric.hpp"

namespace betatile {

// Dense integer polynomial, coefficients ascending (c[0] + c[1] x + ...).
using IntPoly = std::vector<Int>;
// Dense rational polynomial, ascending.
using RatPoly = std::vector<Rat>;

int degree(const IntPoly& p);

Rat eval_rat(const IntPoly& p, const Rat& x);
QInterval eval_interval(const IntPoly& p, const QInterval& x);
CBox eval_box(const IntPoly& p, const CBox& z);

IntPoly derivative(const IntPoly& p);

// Cauchy bound: all roots have |z| <= 1 + max |c_i| (monic p).
Rat root_bound(const IntPoly& p);

// Exact number of distinct real roots in (a, b] via Sturm sequences.
int sturm_count(const IntPoly& p, const Rat& a, const Rat& b);

// Disjoint isolating intervals for all real roots of a squarefree p,
// each refined to width <= max_width, sorted ascending.
std::vector<QInterval> isolate_real_roots(const IntPoly& p, const Rat& max_width);

// Shrink an isolating interval (sign change at endpoints) by bisection.
QInterval refine_root(const IntPoly& p, QInterval iv, const Rat& max_width);

// True iff monic p of degree >= 1 is irreducible over Q.  Brute-force factor
// search with the Landau-Mignotte coefficient bound; fine for desk-scale
// degrees.
bool is_irreducible(const IntPoly& p);

// True iff p equals its own reversal (palindromic coefficients).
bool is_reciprocal(const IntPoly& p);

// Rigorous enclosures for all d roots of a monic squarefree integer
// polynomial: pairwise disjoint boxes, real roots as degenerate-imaginary
// boxes in ascending order first, then one box per complex-conjugate pair
// (positive imaginary part).  Boxes are refined until every box has width
// <= max_width and they are pairwise disjoint (counting the mirrored pairs).
struct RootEnclosures {
    std::vector<QInterval> real_roots;  // ascending
    std::vector<CBox> complex_roots;    // Im > 0 representatives
};
RootEnclosures enclose_roots(const IntPoly& p, const Rat& max_width);

}  // namespace betatile
