#include "betatile/polynomial.hpp"

#include <complex>

namespace betatile {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::NotPisot: return "NotPisot";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::NotIntegral: return "NotIntegral";
        case ErrorCode::NotBetaRational: return "NotBetaRational";
        case ErrorCode::NotInHalfOpenUnit: return "NotInHalfOpenUnit";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::CycleNotFound: return "CycleNotFound";
        case ErrorCode::WrongInterval: return "WrongInterval";
        case ErrorCode::LevelMismatch: return "LevelMismatch";
        case ErrorCode::BoxTooLarge: return "BoxTooLarge";
        case ErrorCode::EmptyGraph: return "EmptyGraph";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::QMViolated: return "QMViolated";
        case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
        case ErrorCode::ConstructionFailed: return "ConstructionFailed";
        case ErrorCode::LevelTooLow: return "LevelTooLow";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

Rat sqrt_upper(const Rat& q) {
    if (sgn(q) < 0) fail(ErrorCode::BadInput, "sqrt of negative rational");
    if (sgn(q) == 0) return Rat(0);
    double d = q.get_d();
    Rat s;
    if (d > 0 && std::isfinite(d)) {
        s = Rat(std::sqrt(d));
        if (sgn(s) <= 0) s = Rat(1);
    } else {
        s = q > 1 ? q : Rat(1);
    }
    for (int i = 0; i < 2; ++i) s = (s + q / s) / 2;
    return s;
}

Rat sqrt_lower(const Rat& q) {
    if (sgn(q) <= 0) return Rat(0);
    return q / sqrt_upper(q);
}

std::string rat_to_decimal(const Rat& q, int digits) {
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    Rat scaled = q * Rat(scale);
    Int n = rat_floor(scaled + Rat(1, 2));
    bool neg = sgn(n) < 0;
    Int a = abs(n);
    Int ip = a / scale, fp = a % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), digits - static_cast<int>(frac.size()), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    std::string out = (neg ? "-" : "") + ip.get_str();
    if (!(frac.size() == 1 && frac[0] == '0')) out += "." + frac;
    return out;
}

int degree(const IntPoly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d > 0 && p[d] == 0) --d;
    return d;
}

Rat eval_rat(const IntPoly& p, const Rat& x) {
    Rat acc(0);
    for (int i = degree(p); i >= 0; --i) acc = acc * x + Rat(p[i]);
    return acc;
}

QInterval eval_interval(const IntPoly& p, const QInterval& x) {
    QInterval acc{Rat(0), Rat(0)};
    for (int i = degree(p); i >= 0; --i) {
        acc = acc * x + QInterval(Rat(p[i]));
    }
    return acc;
}

CBox eval_box(const IntPoly& p, const CBox& z) {
    CBox acc{QInterval(Rat(0)), QInterval(Rat(0))};
    for (int i = degree(p); i >= 0; --i) {
        acc = acc * z + CBox(QInterval(Rat(p[i])));
    }
    return acc;
}

IntPoly derivative(const IntPoly& p) {
    IntPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Int(static_cast<long>(i)));
    if (d.empty()) d.push_back(0);
    return d;
}

Rat root_bound(const IntPoly& p) {
    int d = degree(p);
    Int m = 0;
    for (int i = 0; i < d; ++i) m = std::max(m, Int(abs(p[i])));
    return Rat(1) + Rat(m) / Rat(abs(p[d]));
}

namespace {

RatPoly to_rat(const IntPoly& p) {
    RatPoly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = Rat(p[i]);
    return r;
}

int rdeg(const RatPoly& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d > 0 && sgn(p[d]) == 0) --d;
    return d;
}

bool rzero(const RatPoly& p) { return rdeg(p) == 0 && sgn(p[0]) == 0; }

// remainder of a / b over Q
RatPoly rat_rem(RatPoly a, const RatPoly& b) {
    int db = rdeg(b);
    while (!rzero(a) && rdeg(a) >= db) {
        int da = rdeg(a);
        Rat f = a[da] / b[db];
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0;
        a.resize(std::max(rdeg(a) + 1, 1));
    }
    return a;
}

Rat rat_eval(const RatPoly& p, const Rat& x) {
    Rat acc(0);
    for (int i = rdeg(p); i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

std::vector<RatPoly> sturm_chain(const IntPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(to_rat(p));
    chain.push_back(to_rat(derivative(p)));
    while (!rzero(chain.back())) {
        RatPoly r = rat_rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        if (rzero(r)) break;
        chain.push_back(r);
    }
    return chain;
}

int sign_changes(const std::vector<RatPoly>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sgn(rat_eval(q, x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

int sturm_count(const IntPoly& p, const Rat& a, const Rat& b) {
    auto chain = sturm_chain(p);
    return sign_changes(chain, a) - sign_changes(chain, b);
}

QInterval refine_root(const IntPoly& p, QInterval iv, const Rat& max_width) {
    int slo = sgn(eval_rat(p, iv.lo));
    if (slo == 0) return {iv.lo, iv.lo};  // rational root at endpoint
    while (iv.width() > max_width) {
        Rat mid = iv.mid();
        int sm = sgn(eval_rat(p, mid));
        if (sm == 0) return {mid, mid};
        if (sm == slo) {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    return iv;
}

std::vector<QInterval> isolate_real_roots(const IntPoly& p, const Rat& max_width) {
    auto chain = sturm_chain(p);
    Rat b = root_bound(p);
    struct Seg { Rat lo, hi; int n; };
    auto count = [&](const Rat& a, const Rat& c) {
        return sign_changes(chain, a) - sign_changes(chain, c);
    };
    std::vector<Seg> work{{-b, b, count(-b, b)}};
    std::vector<QInterval> found;
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.n == 0) continue;
        if (s.n == 1) {
            // (lo, hi] isolates one root; turn into a sign-change bracket
            QInterval iv{s.lo, s.hi};
            // endpoint could be the root itself
            if (sgn(eval_rat(p, iv.hi)) == 0) {
                found.push_back({iv.hi, iv.hi});
                continue;
            }
            found.push_back(refine_root(p, iv, max_width));
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        int nl = count(s.lo, mid);
        work.push_back({s.lo, mid, nl});
        work.push_back({mid, s.hi, s.n - nl});
    }
    std::sort(found.begin(), found.end(),
              [](const QInterval& a, const QInterval& c) { return a.lo < c.lo; });
    return found;
}

bool is_reciprocal(const IntPoly& p) {
    int d = degree(p);
    for (int i = 0; i <= d; ++i)
        if (p[i] != p[d - i]) return false;
    return true;
}

namespace {

// ||p||_2 upper bound as integer
Int l2_bound(const IntPoly& p) {
    Rat s(0);
    for (const auto& c : p) s += Rat(c) * Rat(c);
    return rat_ceil(sqrt_upper(s));
}

bool divides_exactly(const IntPoly& p, const IntPoly& f) {
    // f monic; long division over Z
    IntPoly r = p;
    int df = degree(f);
    while (degree(r) >= df && !(degree(r) == 0 && r[0] == 0)) {
        int dr = degree(r);
        Int q = r[dr];
        for (int i = 0; i <= df; ++i) r[dr - df + i] -= q * f[i];
        r.resize(std::max(degree(r) + 1, 1));
        if (dr == df) break;
    }
    for (const auto& c : r)
        if (c != 0) return false;
    return true;
}

bool search_factor(const IntPoly& p, int m, IntPoly& f, int pos, const Int& bound,
                   const std::vector<Int>& const_divisors) {
    if (pos == 0) {
        for (const Int& c0 : const_divisors) {
            f[0] = c0;
            if (divides_exactly(p, f)) return true;
        }
        return false;
    }
    for (Int c = -bound; c <= bound; ++c) {
        f[pos] = c;
        if (search_factor(p, m, f, pos - 1, bound, const_divisors)) return true;
    }
    return false;
}

// ---- irreducibility proof modulo a small prime -------------------------

using FpPoly = std::vector<long>;  // coefficients mod q, ascending

FpPoly fp_mod(const IntPoly& p, long q) {
    FpPoly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Int m;
        mpz_fdiv_r_ui(m.get_mpz_t(), p[i].get_mpz_t(), static_cast<unsigned long>(q));
        r[i] = m.get_si();
    }
    while (r.size() > 1 && r.back() == 0) r.pop_back();
    return r;
}

int fp_deg(const FpPoly& a) {
    int d = static_cast<int>(a.size()) - 1;
    while (d > 0 && a[d] == 0) --d;
    return d;
}

FpPoly fp_rem(FpPoly a, const FpPoly& b, long q) {
    int db = fp_deg(b);
    long inv_lead = 1;
    for (long t = 1; t < q; ++t)
        if (b[db] * t % q == 1) { inv_lead = t; break; }
    while (fp_deg(a) >= db && !(fp_deg(a) == 0 && a[0] == 0)) {
        int da = fp_deg(a);
        long f = a[da] * inv_lead % q;
        if (f == 0) { a[da] = 0; continue; }
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = ((a[da - db + i] - f * b[i]) % q + q) % q;
        if (da == 0) break;
    }
    a.resize(std::max(fp_deg(a) + 1, 1));
    return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, long q) {
    FpPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % q;
    }
    return fp_rem(std::move(c), f, q);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long q) {
    while (!(fp_deg(b) == 0 && b[0] == 0)) {
        FpPoly r = fp_rem(a, b, q);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

FpPoly fp_derivative(const FpPoly& a, long q) {
    FpPoly d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(static_cast<long>(i) * a[i] % q);
    if (d.empty()) d.push_back(0);
    return d;
}

// x^(q^i) mod f by binary exponentiation
FpPoly fp_xpow(const Int& e, const FpPoly& f, long q) {
    FpPoly base{0, 1};
    base = fp_rem(base, f, q);
    FpPoly acc{1};
    Int n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = fp_mulmod(acc, base, f, q);
        base = fp_mulmod(base, base, f, q);
        n >>= 1;
    }
    return acc;
}

// true when p is provably irreducible modulo q (hence over Q); false = no proof
bool irreducible_mod_p(const IntPoly& p, long q) {
    FpPoly f = fp_mod(p, q);
    if (fp_deg(f) != degree(p)) return false;  // leading coefficient vanished
    FpPoly g = fp_gcd(f, fp_derivative(f, q), q);
    if (fp_deg(g) != 0) return false;  // not squarefree mod q
    int d = fp_deg(f);
    Int qe(1);
    for (int i = 1; i <= d / 2; ++i) {
        qe *= q;
        FpPoly xq = fp_xpow(qe, f, q);  // x^(q^i) mod f
        // x^(q^i) - x
        FpPoly diff = xq;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % q + q) % q;
        FpPoly h = fp_gcd(f, diff, q);
        if (fp_deg(h) != 0) return false;  // factor of degree <= d/2 exists mod q
    }
    return true;
}

}  // namespace

bool is_irreducible(const IntPoly& p) {
    int d = degree(p);
    if (d <= 0) return false;
    if (d == 1) return true;
    if (p[0] == 0) return false;  // x divides
    // rational (integer, since monic) roots
    Int a0 = abs(p[0]);
    std::vector<Int> divs;
    for (Int k(1); k * k <= a0; ++k) {
        if (a0 % k == 0) {
            divs.push_back(k);
            divs.push_back(a0 / k);
        }
    }
    for (const Int& cand : divs)
        for (int s = -1; s <= 1; s += 2)
            if (sgn(eval_rat(p, Rat(cand) * s)) == 0) return false;
    // degree 2 and 3: any factorization has a linear factor, already excluded
    if (d <= 3) return true;
    // cheap proof attempts modulo small primes
    for (long q : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L})
        if (irreducible_mod_p(p, q)) return true;
    // bounded factor search with the Landau-Mignotte coefficient bound
    Int bound = Int(1) << (d);  // 2^d
    bound *= l2_bound(p);
    std::vector<Int> const_divisors;
    for (Int k(1); k <= a0; ++k) {
        if (a0 % k == 0) {
            const_divisors.push_back(k);
            const_divisors.push_back(-k);
        }
    }
    for (int m = 2; m <= d / 2; ++m) {
        double cost = static_cast<double>(const_divisors.size());
        for (int i = 1; i < m; ++i) cost *= 2.0 * bound.get_d() + 1.0;
        if (cost > 2e7)
            fail(ErrorCode::BadInput,
                 "irreducibility undecided within the desk-scale search budget");
        IntPoly f(m + 1, Int(0));
        f[m] = 1;
        if (search_factor(p, m, f, m - 1, bound, const_divisors)) return false;
    }
    return true;
}

namespace {

using CD = std::complex<double>;

CD eval_cd(const IntPoly& p, CD z) {
    CD acc(0.0, 0.0);
    for (int i = degree(p); i >= 0; --i) acc = acc * z + CD(p[i].get_d(), 0.0);
    return acc;
}

// Aberth-Ehrlich simultaneous iteration; returns d approximate roots.
std::vector<CD> aberth(const IntPoly& p) {
    int d = degree(p);
    IntPoly dp = derivative(p);
    double r = root_bound(p).get_d();
    std::vector<CD> z(d);
    for (int i = 0; i < d; ++i) {
        double ang = 2.0 * M_PI * (i + 0.25) / d + 0.35;
        z[i] = CD(0.65 * r * std::cos(ang), 0.65 * r * std::sin(ang));
    }
    for (int it = 0; it < 300; ++it) {
        double moved = 0;
        for (int i = 0; i < d; ++i) {
            CD pv = eval_cd(p, z[i]);
            CD dv = eval_cd(dp, z[i]);
            if (std::abs(dv) == 0.0) { z[i] += CD(1e-8, 1e-8); continue; }
            CD w = pv / dv;
            CD s(0.0, 0.0);
            for (int j = 0; j < d; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            CD delta = w / (1.0 - w * s);
            z[i] -= delta;
            moved += std::abs(delta);
        }
        if (moved < 1e-15) break;
    }
    return z;
}

struct RatC {
    Rat re, im;
};

RatC rc_mul(const RatC& a, const RatC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
RatC rc_add(const RatC& a, const RatC& b) { return {a.re + b.re, a.im + b.im}; }
RatC rc_sub(const RatC& a, const RatC& b) { return {a.re - b.re, a.im - b.im}; }

RatC eval_rc(const IntPoly& p, const RatC& z) {
    RatC acc{Rat(0), Rat(0)};
    for (int i = degree(p); i >= 0; --i)
        acc = rc_add(rc_mul(acc, z), RatC{Rat(p[i]), Rat(0)});
    return acc;
}

Rat rc_sqmod(const RatC& a) { return a.re * a.re + a.im * a.im; }

Rat round_dyadic(const Rat& q, unsigned prec_bits) {
    Int scale = Int(1) << prec_bits;
    Int n = rat_floor(q * Rat(scale) + Rat(1, 2));
    return Rat(n) / Rat(scale);
}

// certified radius: min distance from z to a root of p is <= d*|p(z)/p'(z)|.
Rat newton_radius_upper(const IntPoly& p, const IntPoly& dp, const RatC& z) {
    Rat num = rc_sqmod(eval_rc(p, z));
    Rat den = rc_sqmod(eval_rc(dp, z));
    if (sgn(den) == 0) return Rat(-1);  // caller retries at higher precision
    int d = degree(p);
    return sqrt_upper(num / den * Rat(d * d));
}

}  // namespace

RootEnclosures enclose_roots(const IntPoly& p, const Rat& max_width) {
    RootEnclosures out;
    int d = degree(p);
    out.real_roots = isolate_real_roots(p, max_width);
    int n_complex_pairs = (d - static_cast<int>(out.real_roots.size())) / 2;
    if (n_complex_pairs == 0) return out;

    IntPoly dp = derivative(p);
    auto approx = aberth(p);
    // keep one representative per conjugate pair (positive imaginary part)
    std::vector<CD> cand;
    for (const auto& z : approx)
        if (z.imag() > 1e-9) cand.push_back(z);
    std::sort(cand.begin(), cand.end(), [](const CD& a, const CD& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    if (static_cast<int>(cand.size()) != n_complex_pairs)
        fail(ErrorCode::PrecisionExhausted, "complex root count mismatch in isolation");

    for (const auto& z0 : cand) {
        RatC z{Rat(z0.real()), Rat(z0.imag())};
        unsigned prec = 96;
        CBox box;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 60)
                fail(ErrorCode::PrecisionExhausted, "complex root refinement stalled");
            // Newton step in exact rational complex arithmetic, rounded dyadic
            RatC pv = eval_rc(p, z), dv = eval_rc(dp, z);
            Rat dm = rc_sqmod(dv);
            if (sgn(dm) != 0) {
                // z -= p/p' = p * conj(p') / |p'|^2
                RatC num = rc_mul(pv, RatC{dv.re, -dv.im});
                z.re -= num.re / dm;
                z.im -= num.im / dm;
            }
            z.re = round_dyadic(z.re, prec);
            z.im = round_dyadic(z.im, prec);
            Rat rad = newton_radius_upper(p, dp, z);
            if (sgn(rad) >= 0 && rad * 2 <= max_width && rad * 4 < z.im) {
                box = CBox{QInterval{z.re - rad, z.re + rad},
                           QInterval{z.im - rad, z.im + rad}};
                break;
            }
            prec += 64;
        }
        out.complex_roots.push_back(box);
    }

    // disjointness across all enclosures (including mirrored conjugates)
    std::vector<CBox> all;
    for (const auto& iv : out.real_roots) all.push_back(CBox(iv));
    for (const auto& b : out.complex_roots) {
        all.push_back(b);
        all.push_back(CBox{b.re, QInterval{-b.im.hi, -b.im.lo}});
    }
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            if (all[i].re.intersects(all[j].re) && all[i].im.intersects(all[j].im))
                fail(ErrorCode::PrecisionExhausted, "root enclosures overlap");
    return out;
}

}  // namespace betatile
