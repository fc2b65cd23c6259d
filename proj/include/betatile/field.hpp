#pragma once

#include "betatile/polynomial.hpp"

#include <map>
#include <memory>
#include <optional>

namespace betatile {

class FieldElement;

enum class Ordering { Less, Equal, Greater };

// A validated Pisot base: minimal polynomial, rigorous enclosures for every
// archimedean place (dominant first), norm and digit alphabet.
class BetaField {
public:
    // min_poly coefficients ascending, monic, integer; validates Pisot.
    static BetaField make(IntPoly min_poly, unsigned precision_bits = 128);

    int degree() const { return deg_; }
    const IntPoly& min_poly() const { return poly_; }
    const Int& norm() const { return norm_; }          // N(beta), signed
    Int norm_abs() const { return abs(norm_); }
    int alphabet_max() const { return alphabet_max_; } // ceil(beta) - 1
    unsigned precision_bits() const { return precision_bits_; }

    // dominant root enclosure; width <= 2^-precision_bits
    const QInterval& beta_interval() const { return dominant_; }

    // Non-dominant archimedean places.  Real places come first (ascending),
    // then complex places (one representative per conjugate pair, Im > 0).
    struct Place {
        CBox box;
        bool complex;
    };
    const std::vector<Place>& conjugate_places() const { return places_; }
    int num_conjugate_places() const { return static_cast<int>(places_.size()); }

    // upper bound on |beta^(place)|, strictly < 1
    Rat conj_mod_upper(int place) const;
    // upper bound on (ceil(beta)-1)/(1-|beta^(place)|)
    Rat tail_bound(int place) const;

    // Refine a copy of the dominant enclosure to the given width.
    QInterval refined_beta(const Rat& max_width) const;

    FieldElement element(std::vector<Rat> coeffs) const;
    FieldElement element_int(long c0) const;
    FieldElement from_rational(const Rat& q) const;
    FieldElement beta() const;   // the base itself
    FieldElement zero() const;
    FieldElement one() const;

    // beta^k reduced modulo min_poly, integer coefficients, k <= 2d-2
    const std::vector<Int>& power_reduced(int k) const { return powers_[k]; }
    // 1/beta as an exact element of Q(beta)
    const std::vector<Rat>& inv_beta_coeffs() const { return inv_beta_; }

private:
    IntPoly poly_;
    int deg_ = 0;
    Int norm_;
    int alphabet_max_ = 0;
    unsigned precision_bits_ = 0;
    QInterval dominant_;
    std::vector<Place> places_;
    std::vector<std::vector<Int>> powers_;
    std::vector<Rat> inv_beta_;

    friend class FieldElement;
};

// Exact element of Q(beta) as a rational vector in the basis 1, beta, ...,
// beta^{d-1}.  Plain immutable value; equality is coefficient equality.
class FieldElement {
public:
    FieldElement() : field_(nullptr) {}
    FieldElement(const BetaField* f, std::vector<Rat> coeffs);

    const BetaField& field() const { return *field_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& coeff(int i) const { return c_[i]; }

    bool is_zero() const;
    bool is_integral() const;                      // in Z[beta]
    std::optional<int> beta_inverse_power(int cap = 64) const;  // min k with beta^k x in Z[beta]
    bool in_z_beta_inv(int cap = 64) const { return beta_inverse_power(cap).has_value(); }
    std::optional<Rat> as_rational() const;        // value if in Q

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator*(const Rat& s) const;
    FieldElement operator+(const Rat& s) const;
    FieldElement operator-(const Rat& s) const;
    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // lexicographic coefficient order; used for canonical sorting, not the
    // numeric order (see compare)
    bool operator<(const FieldElement& o) const { return c_ < o.c_; }

    FieldElement inverse() const;    // fails on zero
    FieldElement div_beta() const;   // exact x / beta
    FieldElement mul_beta() const;   // exact x * beta
    FieldElement pow_beta(int k) const;  // x * beta^k, k may be negative

    // enclosure at the dominant place, from the field's stored precision
    QInterval dominant_interval() const;
    // enclosure at non-dominant place i
    CBox conjugate_box(int place) const;
    double approx() const { return dominant_interval().mid_double(); }
    double conj_approx(int place) const { return conjugate_box(place).re.mid_double(); }

    std::string to_string() const;  // human-readable polynomial in beta

private:
    const BetaField* field_;
    std::vector<Rat> c_;
};

// Exact total-order comparison.  Equality is decided on coefficient vectors;
// strict order by refining the dominant enclosure (doubling bisection work
// per round, hard cap of 16 rounds).
Ordering compare(const FieldElement& a, const FieldElement& b);
Ordering compare(const FieldElement& a, const Rat& b);

inline bool lt(const FieldElement& a, const FieldElement& b) { return compare(a, b) == Ordering::Less; }
inline bool le(const FieldElement& a, const FieldElement& b) { return compare(a, b) != Ordering::Greater; }
inline bool lt(const FieldElement& a, const Rat& b) { return compare(a, b) == Ordering::Less; }
inline bool le(const FieldElement& a, const Rat& b) { return compare(a, b) != Ordering::Greater; }
inline bool gt(const FieldElement& a, const Rat& b) { return compare(a, b) == Ordering::Greater; }
inline bool ge(const FieldElement& a, const Rat& b) { return compare(a, b) != Ordering::Less; }

// floor(beta * x) for x >= 0, exact (integrality of beta*x detected on the
// coefficient vector).
Int floor_mul_beta(const FieldElement& x);
// floor / ceil of an arbitrary element
Int floor_elem(const FieldElement& x);
Int ceil_elem(const FieldElement& x);

// Residue digits at the finite places: x = d0 + beta * x1 with d0 the unique
// representative in {0, ..., |N(beta)|-1}; returns d0...d_{k-1}.
std::vector<int> finite_address(const FieldElement& x, int k);
// Address value sum d_j |N|^{-j-1} in [0,1).
Rat address_value(const std::vector<int>& digits, const Int& norm_abs);

// map on coefficient vectors for exact sets
struct FieldElementLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const {
        return a.coeffs() < b.coeffs();
    }
};

}  // namespace betatile
