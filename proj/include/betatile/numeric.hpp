#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace betatile {

using Int = mpz_class;
using Rat = mpq_class;

enum class ErrorCode {
    DegreeTooSmall,
    NotIrreducible,
    NotPisot,
    PrecisionExhausted,
    NotIntegral,
    NotBetaRational,
    NotInHalfOpenUnit,
    OutOfDomain,
    CycleNotFound,
    WrongInterval,
    LevelMismatch,
    BoxTooLarge,
    EmptyGraph,
    BadParameters,
    QMViolated,
    IterationCapExceeded,
    ConstructionFailed,
    LevelTooLow,
    BadInput,
};

const char* error_code_name(ErrorCode c);

struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& msg)
        : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) {
    throw Error(c, msg);
}

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Rational upper bound for sqrt(q), q >= 0.  Two Newton steps from a double
// seed; (s + q/s)/2 >= sqrt(q) for any s > 0.
Rat sqrt_upper(const Rat& q);

// Rational lower bound for sqrt(q), q >= 0: q / sqrt_upper(q).
Rat sqrt_lower(const Rat& q);

// Closed interval with exact rational endpoints.
struct QInterval {
    Rat lo, hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(const Rat& v) : lo(v), hi(v) {}
    QInterval(const Rat& l, const Rat& h) : lo(l), hi(h) {
        if (lo > hi) fail(ErrorCode::BadInput, "interval endpoints out of order");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains(const QInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    bool intersects(const QInterval& o) const { return !(hi < o.lo || o.hi < lo); }

    // decided sign: -1, 0 (undecided / contains zero), +1
    int sign() const {
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;
    }

    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    QInterval operator-() const { return {-hi, -lo}; }
    QInterval operator*(const QInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }
    QInterval operator*(const Rat& s) const {
        return s >= 0 ? QInterval{lo * s, hi * s} : QInterval{hi * s, lo * s};
    }
    QInterval operator+(const Rat& s) const { return {lo + s, hi + s}; }

    // |.| upper and lower bounds
    Rat abs_upper() const { return std::max(Rat(abs(lo)), Rat(abs(hi))); }
    Rat abs_lower() const {
        if (contains_zero()) return Rat(0);
        return std::min(Rat(abs(lo)), Rat(abs(hi)));
    }

    double mid_double() const { return mid().get_d(); }
};

// Axis-aligned rectangle in the complex plane.
struct CBox {
    QInterval re, im;

    CBox() = default;
    CBox(const QInterval& r, const QInterval& i) : re(r), im(i) {}
    explicit CBox(const QInterval& r) : re(r), im(Rat(0)) {}

    bool is_real() const { return im.lo == 0 && im.hi == 0; }

    CBox operator+(const CBox& o) const { return {re + o.re, im + o.im}; }
    CBox operator-(const CBox& o) const { return {re - o.re, im - o.im}; }
    CBox operator*(const CBox& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CBox operator*(const Rat& s) const { return {re * s, im * s}; }

    // bounds on |z|^2 over the box
    Rat sqmod_upper() const {
        Rat a = re.abs_upper(), b = im.abs_upper();
        return a * a + b * b;
    }
    Rat sqmod_lower() const {
        Rat a = re.abs_lower(), b = im.abs_lower();
        return a * a + b * b;
    }
    Rat mod_upper() const { return sqrt_upper(sqmod_upper()); }
    Rat mod_lower() const { return sqrt_lower(sqmod_lower()); }
};

// Small deterministic RNG (splitmix64); used wherever sampling needs a seed so
// that output is identical across platforms and runs.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }
    // dyadic rational in [0,1) with 32 bits
    Rat unit() {
        Rat r(static_cast<unsigned long>(next() >> 32));
        return r / Rat(4294967296.0);
    }
};

std::string rat_to_decimal(const Rat& q, int digits = 12);

}  // namespace betatile
