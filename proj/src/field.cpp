#include "betatile/field.hpp"

#include <sstream>

namespace betatile {

BetaField BetaField::make(IntPoly p, unsigned precision_bits) {
    BetaField f;
    int d = betatile::degree(p);
    p.resize(d + 1);
    if (d < 2) fail(ErrorCode::DegreeTooSmall, "minimal polynomial must have degree >= 2");
    if (p[d] != 1) fail(ErrorCode::BadInput, "minimal polynomial must be monic");
    if (!is_irreducible(p))
        fail(ErrorCode::NotIrreducible, "polynomial factors over the rationals");
    // An irreducible polynomial with a root on the unit circle is reciprocal;
    // irreducible reciprocal polynomials of degree >= 3 are never Pisot
    // (their off-axis roots sit exactly on the circle, e.g. Salem numbers).
    if (d >= 3 && is_reciprocal(p))
        fail(ErrorCode::NotPisot, "reciprocal polynomial of degree >= 3 cannot be Pisot");

    Rat width = Rat(1) / (Int(1) << precision_bits);
    RootEnclosures roots = enclose_roots(p, width);

    // exactly one real root > 1, everything else of modulus < 1
    int dominant_idx = -1;
    for (size_t i = 0; i < roots.real_roots.size(); ++i) {
        if (roots.real_roots[i].lo > 1) {
            if (dominant_idx >= 0)
                fail(ErrorCode::NotPisot, "more than one root exceeds 1");
            dominant_idx = static_cast<int>(i);
        } else if (roots.real_roots[i].hi >= 1) {
            // undecided against 1: irreducible => root != 1, refine
            QInterval iv = refine_root(p, roots.real_roots[i], width / 1024);
            if (iv.lo > 1) {
                if (dominant_idx >= 0)
                    fail(ErrorCode::NotPisot, "more than one root exceeds 1");
                dominant_idx = static_cast<int>(i);
                roots.real_roots[i] = iv;
            }
        }
    }
    if (dominant_idx < 0)
        fail(ErrorCode::NotPisot, "no real root greater than 1");
    for (size_t i = 0; i < roots.real_roots.size(); ++i) {
        if (static_cast<int>(i) == dominant_idx) continue;
        QInterval iv = roots.real_roots[i];
        while (iv.abs_upper() >= 1) {
            if (iv.abs_lower() > 1)
                fail(ErrorCode::NotPisot, "non-dominant real root has modulus > 1");
            if (sgn(eval_rat(p, Rat(1))) == 0 || sgn(eval_rat(p, Rat(-1))) == 0)
                fail(ErrorCode::NotPisot, "root at +-1");
            iv = refine_root(p, iv, iv.width() / 1024);
        }
        roots.real_roots[i] = iv;
    }
    for (const auto& b : roots.complex_roots) {
        if (b.sqmod_upper() >= 1) {
            if (b.sqmod_lower() > 1)
                fail(ErrorCode::NotPisot, "complex root has modulus > 1");
            // reciprocal case was rejected above, so the root is off the
            // circle; the enclosure from make-time precision should decide
            fail(ErrorCode::PrecisionExhausted,
                 "complex enclosure straddles the unit circle; raise precision_bits");
        }
    }

    f.poly_ = p;
    f.deg_ = d;
    f.precision_bits_ = precision_bits;
    f.dominant_ = roots.real_roots[dominant_idx];
    f.norm_ = (d % 2 == 0 ? p[0] : -p[0]);
    for (size_t i = 0; i < roots.real_roots.size(); ++i)
        if (static_cast<int>(i) != dominant_idx)
            f.places_.push_back({CBox(roots.real_roots[i]), false});
    for (const auto& b : roots.complex_roots) f.places_.push_back({b, true});

    // alphabet: ceil(beta) - 1; beta irrational, so floor is decidable
    QInterval biv = f.dominant_;
    while (rat_floor(biv.lo) != rat_floor(biv.hi)) biv = refine_root(p, biv, biv.width() / 4);
    f.alphabet_max_ = static_cast<int>(rat_floor(biv.lo).get_si());  // ceil-1 == floor

    // beta^k mod min_poly for k <= 2d-2 (integer vectors)
    f.powers_.resize(2 * d - 1);
    for (int k = 0; k < 2 * d - 1; ++k) {
        std::vector<Int>& v = f.powers_[k];
        v.assign(d, Int(0));
        if (k < d) {
            v[k] = 1;
        } else {
            // beta^k = beta * beta^{k-1}; shift then fold the top term with
            // beta^d = -(p[0] + p[1] beta + ... + p[d-1] beta^{d-1})
            const std::vector<Int>& prev = f.powers_[k - 1];
            std::vector<Int> shifted(d + 1, Int(0));
            for (int i = 0; i < d; ++i) shifted[i + 1] = prev[i];
            Int top = shifted[d];
            for (int i = 0; i < d; ++i) v[i] = shifted[i] - top * p[i];
        }
    }

    // 1/beta = -(p[1] + p[2] beta + ... + beta^{d-1}) / p[0]
    f.inv_beta_.assign(d, Rat(0));
    for (int i = 0; i < d; ++i) {
        f.inv_beta_[i] = Rat(-p[i + 1]) / Rat(p[0]);
    }

    return f;
}

Rat BetaField::conj_mod_upper(int place) const {
    Rat m = places_[place].box.mod_upper();
    if (m >= 1) fail(ErrorCode::PrecisionExhausted, "conjugate modulus bound not below 1");
    return m;
}

Rat BetaField::tail_bound(int place) const {
    return Rat(alphabet_max_) / (Rat(1) - conj_mod_upper(place));
}

QInterval BetaField::refined_beta(const Rat& max_width) const {
    return refine_root(poly_, dominant_, max_width);
}

FieldElement BetaField::element(std::vector<Rat> coeffs) const {
    coeffs.resize(deg_, Rat(0));
    for (auto& c : coeffs) c.canonicalize();
    return FieldElement(this, std::move(coeffs));
}

FieldElement BetaField::element_int(long c0) const {
    std::vector<Rat> c(deg_, Rat(0));
    c[0] = Rat(c0);
    return FieldElement(this, std::move(c));
}

FieldElement BetaField::from_rational(const Rat& q) const {
    std::vector<Rat> c(deg_, Rat(0));
    c[0] = q;
    return FieldElement(this, std::move(c));
}

FieldElement BetaField::beta() const {
    std::vector<Rat> c(deg_, Rat(0));
    c[1] = 1;
    return FieldElement(this, std::move(c));
}

FieldElement BetaField::zero() const { return element_int(0); }
FieldElement BetaField::one() const { return element_int(1); }

FieldElement::FieldElement(const BetaField* f, std::vector<Rat> coeffs)
    : field_(f), c_(std::move(coeffs)) {
    c_.resize(f->degree(), Rat(0));
}

bool FieldElement::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

bool FieldElement::is_integral() const {
    for (const auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

std::optional<int> FieldElement::beta_inverse_power(int cap) const {
    FieldElement y = *this;
    for (int k = 0; k <= cap; ++k) {
        if (y.is_integral()) return k;
        y = y.mul_beta();
    }
    return std::nullopt;
}

std::optional<Rat> FieldElement::as_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return std::nullopt;
    return c_[0];
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    std::vector<Rat> r(c_);
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    std::vector<Rat> r(c_);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x = -x;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    int d = field_->degree();
    std::vector<Rat> conv(2 * d - 1, Rat(0));
    for (int i = 0; i < d; ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (sgn(o.c_[j]) == 0) continue;
            conv[i + j] += c_[i] * o.c_[j];
        }
    }
    std::vector<Rat> r(d, Rat(0));
    for (int k = 0; k < 2 * d - 1; ++k) {
        if (sgn(conv[k]) == 0) continue;
        const std::vector<Int>& pw = field_->power_reduced(k);
        for (int i = 0; i < d; ++i)
            if (pw[i] != 0) r[i] += conv[k] * Rat(pw[i]);
    }
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator*(const Rat& s) const {
    std::vector<Rat> r(c_);
    for (auto& x : r) x *= s;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator+(const Rat& s) const {
    std::vector<Rat> r(c_);
    r[0] += s;
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::operator-(const Rat& s) const {
    std::vector<Rat> r(c_);
    r[0] -= s;
    return FieldElement(field_, std::move(r));
}

namespace {

int rp_deg(const RatPoly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d > 0 && sgn(p[d]) == 0) --d;
    return d;
}

// extended Euclid over Q[x]: returns (g, u) with u*a == g  (mod m), g constant
void half_xgcd(RatPoly a, RatPoly m, RatPoly& g, RatPoly& u) {
    auto is_zero = [](const RatPoly& p) { return rp_deg(p) == 0 && sgn(p[0]) == 0; };
    RatPoly r0 = std::move(m), r1 = std::move(a);
    RatPoly s0{Rat(0)}, s1{Rat(1)};
    while (!is_zero(r1)) {
        // full division r0 = q * r1 + r
        RatPoly r = r0;
        int d1 = rp_deg(r1);
        RatPoly q(static_cast<size_t>(std::max(rp_deg(r0) - d1 + 1, 1)), Rat(0));
        while (!is_zero(r) && rp_deg(r) >= d1) {
            int dr = rp_deg(r);
            Rat f = r[dr] / r1[d1];
            q[dr - d1] += f;
            for (int i = 0; i <= d1; ++i) r[dr - d1 + i] -= f * r1[i];
            if (dr == 0) break;
        }
        RatPoly s(std::max(s0.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < s0.size(); ++i) s[i] += s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (sgn(q[i]) == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    g = std::move(r0);
    u = std::move(s0);
}

}  // namespace

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail(ErrorCode::BadInput, "inverse of zero");
    int d = field_->degree();
    RatPoly a(c_.begin(), c_.end());
    RatPoly m(d + 1);
    for (int i = 0; i <= d; ++i) m[i] = Rat(field_->min_poly()[i]);
    RatPoly g, u;
    half_xgcd(a, m, g, u);
    if (rp_deg(g) != 0 || sgn(g[0]) == 0)
        fail(ErrorCode::BadInput, "gcd not constant; minimal polynomial not irreducible?");
    std::vector<Rat> r(d, Rat(0));
    // reduce u / g mod min_poly; u may have degree >= d
    RatPoly red = u;
    for (int k = rp_deg(red); k >= d; --k) {
        Rat top = red[k];
        if (sgn(top) == 0) continue;
        const std::vector<Int>& pw = field_->power_reduced(k);
        red[k] = 0;
        for (int i = 0; i < d; ++i) red[i] += top * Rat(pw[i]);
    }
    red.resize(d, Rat(0));
    for (int i = 0; i < d; ++i) r[i] = red[i] / g[0];
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::mul_beta() const {
    int d = field_->degree();
    const IntPoly& p = field_->min_poly();
    std::vector<Rat> r(d, Rat(0));
    Rat top = c_[d - 1];
    for (int i = 1; i < d; ++i) r[i] = c_[i - 1];
    if (sgn(top) != 0)
        for (int i = 0; i < d; ++i) r[i] -= top * Rat(p[i]);
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::div_beta() const {
    FieldElement inv(field_, std::vector<Rat>(field_->inv_beta_coeffs()));
    return *this * inv;
}

FieldElement FieldElement::pow_beta(int k) const {
    FieldElement r = *this;
    for (; k > 0; --k) r = r.mul_beta();
    for (; k < 0; ++k) r = r.div_beta();
    return r;
}

QInterval FieldElement::dominant_interval() const {
    QInterval x = field_->beta_interval();
    QInterval acc{Rat(0), Rat(0)};
    for (int i = field_->degree() - 1; i >= 0; --i)
        acc = acc * x + QInterval(c_[i]);
    return acc;
}

CBox FieldElement::conjugate_box(int place) const {
    CBox z = field_->conjugate_places()[place].box;
    CBox acc{QInterval(Rat(0)), QInterval(Rat(0))};
    for (int i = field_->degree() - 1; i >= 0; --i)
        acc = acc * z + CBox(QInterval(c_[i]));
    return acc;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < field_->degree(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        Rat v = c_[i];
        if (!first) os << (sgn(v) > 0 ? " + " : " - ");
        else if (sgn(v) < 0) os << "-";
        Rat a = abs(v);
        first = false;
        if (i == 0) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << "b";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

Ordering compare(const FieldElement& a, const FieldElement& b) {
    if (a.coeffs() == b.coeffs()) return Ordering::Equal;
    FieldElement e = a - b;
    const BetaField& f = a.field();
    QInterval beta_iv = f.beta_interval();
    for (int round = 0; round <= 16; ++round) {
        QInterval acc{Rat(0), Rat(0)};
        for (int i = f.degree() - 1; i >= 0; --i)
            acc = acc * beta_iv + QInterval(e.coeff(i));
        int s = acc.sign();
        if (s > 0) return Ordering::Greater;
        if (s < 0) return Ordering::Less;
        // double the bisection work each round
        long steps = 1L << (round + 1);
        Rat target = beta_iv.width();
        for (long i = 0; i < steps && target > 0; ++i) target /= 2;
        beta_iv = refine_root(f.min_poly(), beta_iv, target);
    }
    fail(ErrorCode::PrecisionExhausted, "compare: refinement cap reached");
}

Ordering compare(const FieldElement& a, const Rat& b) {
    return compare(a, a.field().from_rational(b));
}

Int floor_elem(const FieldElement& x) {
    if (auto q = x.as_rational()) return rat_floor(*q);
    const BetaField& f = x.field();
    QInterval beta_iv = f.beta_interval();
    for (int round = 0; round <= 16; ++round) {
        QInterval acc{Rat(0), Rat(0)};
        for (int i = f.degree() - 1; i >= 0; --i)
            acc = acc * beta_iv + QInterval(x.coeff(i));
        Int flo = rat_floor(acc.lo), fhi = rat_floor(acc.hi);
        if (flo == fhi) return flo;
        // an irrational element never sits on an integer, but its enclosure
        // may straddle one until refined; also verify exact boundary cases
        if (fhi == flo + 1) {
            FieldElement diff = x - Rat(fhi);
            if (diff.is_zero()) return fhi;
        }
        long steps = 1L << (round + 1);
        Rat target = beta_iv.width();
        for (long i = 0; i < steps && target > 0; ++i) target /= 2;
        beta_iv = refine_root(f.min_poly(), beta_iv, target);
    }
    fail(ErrorCode::PrecisionExhausted, "floor: refinement cap reached");
}

Int ceil_elem(const FieldElement& x) {
    if (auto q = x.as_rational()) return rat_ceil(*q);
    return floor_elem(x) + 1;  // irrational
}

Int floor_mul_beta(const FieldElement& x) {
    if (compare(x, Rat(0)) == Ordering::Less)
        fail(ErrorCode::OutOfDomain, "floor_mul_beta requires x >= 0");
    return floor_elem(x.mul_beta());
}

std::vector<int> finite_address(const FieldElement& x, int k) {
    if (!x.is_integral()) fail(ErrorCode::NotIntegral, "finite_address requires x in Z[beta]");
    Int nabs = x.field().norm_abs();
    std::vector<int> digits;
    digits.reserve(k);
    if (nabs == 1) return std::vector<int>(k, 0);  // unit case: trivial residue
    FieldElement y = x;
    for (int j = 0; j < k; ++j) {
        Int c0 = y.coeff(0).get_num();  // integral, denominator 1
        Int d;
        mpz_fdiv_r(d.get_mpz_t(), c0.get_mpz_t(), nabs.get_mpz_t());
        digits.push_back(static_cast<int>(d.get_si()));
        y = (y - Rat(d)).div_beta();
        if (!y.is_integral())
            fail(ErrorCode::NotIntegral, "residue division left Z[beta]");
    }
    return digits;
}

Rat address_value(const std::vector<int>& digits, const Int& norm_abs) {
    Rat v(0);
    Rat base(norm_abs);
    Rat scale = Rat(1) / base;
    for (int d : digits) {
        v += Rat(d) * scale;
        scale /= base;
    }
    return v;
}

}  // namespace betatile
