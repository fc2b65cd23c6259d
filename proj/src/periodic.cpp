#include "betatile/periodic.hpp"

#include "betatile/lattice.hpp"

#include <functional>
#include <numeric>

namespace betatile {

PurityReport is_purely_periodic(const FieldElement& x, long cap) {
    if (compare(x, Rat(0)) == Ordering::Less || compare(x, Rat(1)) != Ordering::Less)
        fail(ErrorCode::OutOfDomain, "x not in [0,1)");
    PurityReport rep;
    rep.x = x;
    std::map<FieldElement, int, FieldElementLess> seen;
    FieldElement cur = x;
    int idx = 0;
    while (true) {
        auto it = seen.find(cur);
        if (it != seen.end()) {
            rep.preperiod = it->second;
            rep.period = idx - it->second;
            rep.purely_periodic = (it->second == 0);
            break;
        }
        seen.emplace(cur, idx);
        rep.orbit.push_back(cur);
        cur = t_step(cur);
        if (++idx > cap)
            fail(ErrorCode::IterationCapExceeded, "orbit exceeded iteration cap");
    }
    return rep;
}

std::vector<FieldElement> pur_set_integral(const ParryData& parry, long cap) {
    const BetaField& f = *parry.field;
    std::vector<Rat> bounds;
    for (int pl = 0; pl < f.num_conjugate_places(); ++pl)
        bounds.push_back(f.tail_bound(pl));
    EmbeddingWindow win{QInterval{Rat(0), Rat(1)}, bounds};
    std::vector<FieldElement> candidates = enumerate_lattice_window(f, win, cap);
    std::vector<FieldElement> out;
    for (const auto& x : candidates) {
        if (compare(x, Rat(0)) == Ordering::Less || compare(x, Rat(1)) != Ordering::Less)
            continue;
        if (is_purely_periodic(x).purely_periodic) out.push_back(x);
    }
    std::sort(out.begin(), out.end(),
              [](const FieldElement& a, const FieldElement& b) { return lt(a, b); });
    return out;
}

namespace {

// Lazily extended table of T^-m(0), each level sorted ascending.  Levels grow
// like beta^m; the soft cap turns the searches below into semi-decisions.
class ZeroPreimages {
public:
    explicit ZeroPreimages(const BetaField& f, size_t soft_cap = 400000)
        : field_(&f), soft_cap_(soft_cap) {
        levels_.push_back({f.zero()});
    }

    // nullptr when the level would exceed the cap
    const std::vector<FieldElement>* level(int m) {
        while (static_cast<int>(levels_.size()) <= m) {
            const auto& prev = levels_.back();
            std::vector<FieldElement> next;
            for (const auto& y : prev) {
                auto pre = t_preimages(y, false);
                next.insert(next.end(), pre.begin(), pre.end());
            }
            if (next.size() > soft_cap_) return nullptr;
            std::sort(next.begin(), next.end(),
                      [](const FieldElement& a, const FieldElement& b) { return lt(a, b); });
            levels_.push_back(std::move(next));
        }
        return &levels_[m];
    }

private:
    const BetaField* field_;
    size_t soft_cap_;
    std::vector<std::vector<FieldElement>> levels_;
};

// first index n <= n_cap with T^n(x) == 0, or -1
int steps_to_zero(const FieldElement& x, int n_cap) {
    FieldElement cur = x;
    for (int n = 0; n <= n_cap; ++n) {
        if (cur.is_zero()) return n;
        cur = t_step(cur);
    }
    return -1;
}

// successor of an arbitrary x in [0,1): min{ u in V_hat : u > x }
FieldElement hat_of(const ParryData& parry, const FieldElement& x) {
    for (const auto& u : parry.V_hat)
        if (compare(u, x) == Ordering::Greater) return u;
    return parry.field->one();
}

}  // namespace

WReport check_W(const ParryData& parry, int y_depth, int n_cap) {
    const BetaField& f = *parry.field;
    ZeroPreimages table(f);
    WReport rep;
    rep.P = pur_set_integral(parry);
    rep.all_found = true;
    for (const auto& x : rep.P) {
        std::optional<WWitness> found;
        if (x.is_zero()) {
            found = WWitness{f.zero(), 0};
        } else {
            FieldElement room = f.one() - x;  // y must stay below 1 - x
            for (int m = 0; m <= y_depth && !found; ++m) {
                const auto* ys = table.level(m);
                if (!ys) break;
                for (const auto& y : *ys) {
                    if (compare(y, room) != Ordering::Less) break;  // ascending order
                    int n1 = steps_to_zero(x + y, n_cap);
                    if (n1 >= 0) {
                        found = WWitness{y, std::max(n1, m)};
                        break;
                    }
                }
            }
        }
        if (!found) rep.all_found = false;
        rep.witnesses.push_back(found);
    }
    return rep;
}

namespace {

struct ConstructionState {
    std::vector<FieldElement> ys;
    std::vector<int> ks;
};

// x + sum_{i=l..j} y_i beta^{-(k_l + ... + k_{i-1})} < x-hat for every x in P
// and every suffix start l; keeps the perturbed orbits on the digit paths of
// the pure ones.
bool tails_admissible(const ParryData& parry, const std::vector<FieldElement>& P,
                      const ConstructionState& st) {
    const BetaField& f = *parry.field;
    size_t j = st.ys.size();
    for (size_t l = 0; l < j; ++l) {
        FieldElement tail = f.zero();
        int shift = 0;
        for (size_t i = l; i < j; ++i) {
            tail = tail + st.ys[i].pow_beta(-shift);
            shift += st.ks[i];
        }
        for (const auto& x : P)
            if (compare(x + tail, hat_of(parry, x)) != Ordering::Less) return false;
    }
    return true;
}

}  // namespace

ExclusivePoint exclusive_point(const ParryData& parry, const WReport& witnesses,
                               int y_depth, int n_cap) {
    const BetaField& f = *parry.field;
    const std::vector<FieldElement>& P = witnesses.P;
    if (!witnesses.all_found)
        fail(ErrorCode::ConstructionFailed, "weak-finiteness witnesses incomplete");

    std::vector<FieldElement> nonzero;
    for (const auto& x : P)
        if (!x.is_zero()) nonzero.push_back(x);

    ZeroPreimages table(f);
    ConstructionState st;
    long tries = 0;
    std::function<bool(size_t)> solve = [&](size_t j) -> bool {
        if (j == nonzero.size()) return true;
        // residual s_j = T^{k_1+...+k_{j-1}}(x_j + sum y_i beta^{-...})
        FieldElement arg = nonzero[j];
        int total = 0;
        for (size_t i = 0; i < st.ys.size(); ++i) {
            arg = arg + st.ys[i].pow_beta(-total);
            total += st.ks[i];
        }
        if (compare(arg, Rat(1)) != Ordering::Less) return false;
        FieldElement s = arg;
        for (int t = 0; t < total; ++t) s = t_step(s);
        if (s.is_zero()) {
            // perturbations already absorbed; nothing to add at this step
            st.ys.push_back(f.zero());
            st.ks.push_back(0);
            if (tails_admissible(parry, P, st) && solve(j + 1)) return true;
            st.ys.pop_back();
            st.ks.pop_back();
            return false;
        }
        if (!s.is_integral()) return false;
        FieldElement room_s = f.one() - s;
        for (int m = 0; m <= y_depth; ++m) {
            const auto* ys = table.level(m);
            if (!ys) break;
            for (const auto& y : *ys) {
                if (compare(y, room_s) != Ordering::Less) break;
                if (++tries > 20000)
                    fail(ErrorCode::ConstructionFailed, "witness search budget exhausted");
                int n1 = steps_to_zero(s + y, n_cap);
                if (n1 < 0) continue;
                int k = std::max(n1, m);
                st.ys.push_back(y);
                st.ks.push_back(k);
                if (tails_admissible(parry, P, st) && solve(j + 1)) return true;
                st.ys.pop_back();
                st.ks.pop_back();
            }
        }
        return false;
    };

    if (!solve(0))
        fail(ErrorCode::ConstructionFailed,
             "no witness assignment satisfied the recursive side conditions");

    ExclusivePoint out;
    int total = 0;
    for (int k : st.ks) total += k;
    out.total_steps = total;
    // z = beta^N * (y_1 + y_2 beta^{-k_1} + ...),  N = k_1 + ... + k_h
    FieldElement sigma = f.zero();
    int shift = 0;
    for (size_t i = 0; i < st.ys.size(); ++i) {
        sigma = sigma + st.ys[i].pow_beta(-shift);
        shift += st.ks[i];
    }
    out.z = sigma.pow_beta(total);

    // verify T^N(x + beta^-N z) = 0 exactly for every x in P
    for (const auto& x : P) {
        FieldElement arg = x + out.z.pow_beta(-total);
        if (compare(arg, Rat(1)) != Ordering::Less)
            fail(ErrorCode::ConstructionFailed, "constructed point out of range");
        FieldElement cur = arg;
        for (int t = 0; t < total; ++t) cur = t_step(cur);
        if (!cur.is_zero())
            fail(ErrorCode::ConstructionFailed, "exclusive-point identity failed");
        out.identities.push_back(cur);
    }
    return out;
}

GammaResult gamma_quadratic(long a, long b, unsigned precision_bits) {
    if (a < b || b < 1) fail(ErrorCode::BadParameters, "need a >= b >= 1");
    IntPoly p{Int(-b), Int(-a), Int(1)};
    // fields cached for the process lifetime: the returned exact_value keeps
    // a reference to its base
    static std::map<std::pair<long, long>, BetaField> cache;
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, BetaField::make(p, precision_bits)).first;
    const BetaField& f = it->second;

    FieldElement beta = f.beta();
    FieldElement denom = beta * beta - Rat(Int(b) * Int(b));
    FieldElement value = f.one() - beta * Rat(Int(b) * Int(b - 1)) * denom.inverse();

    GammaResult res;
    res.method = GammaMethod::QuadraticFormula;
    bool positive = Int(b) * Int(b - 1) < Int(a);
    if (positive != (compare(value, Rat(0)) == Ordering::Greater))
        fail(ErrorCode::BadParameters, "positivity threshold mismatch");
    FieldElement gamma = positive ? value : f.zero();
    res.exact_value = gamma;
    res.enclosure = gamma.dominant_interval();
    res.exact = (std::gcd(a, b) == 1);
    return res;
}

namespace {

enum class Verdict : uint8_t { InCycle, Tail };

// orbit walker with a shared verdict cache (states of one denominator)
bool pp_cached(const FieldElement& x,
               std::map<FieldElement, Verdict, FieldElementLess>& cache, long cap) {
    std::vector<FieldElement> path;
    std::map<FieldElement, int, FieldElementLess> pos;
    FieldElement cur = x;
    while (true) {
        auto hit = cache.find(cur);
        if (hit != cache.end()) {
            for (const auto& s : path) cache.emplace(s, Verdict::Tail);
            if (path.empty()) return hit->second == Verdict::InCycle;
            return false;  // reached an already-classified state after fresh steps
        }
        auto it = pos.find(cur);
        if (it != pos.end()) {
            for (int i = 0; i < it->second; ++i) cache.emplace(path[i], Verdict::Tail);
            for (size_t i = it->second; i < path.size(); ++i)
                cache.emplace(path[i], Verdict::InCycle);
            return it->second == 0;
        }
        pos.emplace(cur, static_cast<int>(path.size()));
        path.push_back(cur);
        cur = t_step(cur);
        if (static_cast<long>(path.size()) > cap)
            fail(ErrorCode::IterationCapExceeded, "scan orbit exceeded cap");
    }
}

}  // namespace

GammaResult gamma_scan(const BetaField& field, long max_denominator) {
    if (max_denominator < 2) fail(ErrorCode::BadParameters, "max denominator must be >= 2");
    GammaResult res;
    res.method = GammaMethod::Scan;
    res.exact = false;

    // positive real conjugate => Pur(beta) n Q = {0}, gamma = 0
    for (int pl = 0; pl < field.num_conjugate_places(); ++pl) {
        const auto& place = field.conjugate_places()[pl];
        if (!place.complex && sgn(place.box.re.lo) > 0) {
            res.shortcut_positive_conjugate = true;
            break;
        }
    }

    Int nabs = field.norm_abs();
    struct Tested { Rat value; bool pp; };
    std::vector<Tested> tested;
    // under the shortcut the scan is evidence only; keep it shallow
    long q_limit = res.shortcut_positive_conjugate ? std::min(max_denominator, 64L)
                                                   : max_denominator;
    for (long q = 2; q <= q_limit; ++q) {
        if (gcd(Int(q), nabs) != 1) continue;
        std::map<FieldElement, Verdict, FieldElementLess> cache;
        for (long p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            Rat v(p, q);
            bool pp = pp_cached(field.from_rational(v), cache, 2000000);
            tested.push_back({v, pp});
            ++res.rationals_tested;
        }
    }
    std::sort(tested.begin(), tested.end(),
              [](const Tested& a, const Tested& b) { return a.value < b.value; });
    Rat frontier(1);
    for (const auto& t : tested) {
        if (!t.pp) {
            res.first_non_pp = t.value;
            frontier = t.value;
            break;
        }
    }
    res.largest_verified = frontier;
    res.enclosure = res.shortcut_positive_conjugate ? QInterval{Rat(0), Rat(0)}
                                                    : QInterval{Rat(0), frontier};
    return res;
}

GammaSandwich gamma_lower_bound_thm5(const ParryData& parry, int level, long grid_steps) {
    // The escape condition is fiber-wise: x escapes when some point of the
    // fiber {delta'_inf(v-x)} x (finite places) lies outside R(v).  The cloud
    // splits into depth-level address cylinders; a fiber in cylinder s can
    // only be covered by boxes of cloud points whose address prefix is s, so
    // leaving that cylinder's merged cover certifies an escape.  The lower
    // frontier uses the per-cylinder point hulls (inner approximation).
    const BetaField& f = *parry.field;
    ClassExtents ext = class_extents(parry);
    GammaSandwich out;
    out.level = level;
    out.found_escape = false;
    out.lo = Rat(1);
    out.hi = Rat(1);
    if (f.num_conjugate_places() != 1 || f.conjugate_places()[0].complex)
        fail(ErrorCode::BadParameters,
             "numeric gamma sandwich implemented for real-quadratic bases");

    for (size_t vi = 0; vi < parry.V.size(); ++vi) {
        const FieldElement& v = parry.V[vi];
        TileCloud cloud = rauzy_cloud(v, level, std::max(level, 18), true);
        struct Cyl {
            std::vector<QInterval> cover;  // merged outer boxes
            QInterval hull;                // point hull
            bool init = false;
        };
        std::map<std::vector<int>, Cyl> cyls;
        bool has_addresses = !cloud.addresses.empty();
        for (size_t pi = 0; pi < cloud.points.size(); ++pi) {
            QInterval box = point_outer_box_real(parry, ext, cloud, pi)[0];
            QInterval pt = cloud.points[pi].conjugate_box(0).re;
            std::vector<int> key = has_addresses ? cloud.addresses[pi] : std::vector<int>{};
            Cyl& c = cyls[key];
            c.cover.push_back(box);
            if (!c.init) {
                c.hull = pt;
                c.init = true;
            } else {
                c.hull = QInterval{std::min(c.hull.lo, pt.lo), std::max(c.hull.hi, pt.hi)};
            }
        }
        for (auto& [key, c] : cyls) {
            std::sort(c.cover.begin(), c.cover.end(),
                      [](const QInterval& a, const QInterval& b) { return a.lo < b.lo; });
            std::vector<QInterval> merged;
            for (const auto& b : c.cover) {
                if (!merged.empty() && b.lo <= merged.back().hi) {
                    if (b.hi > merged.back().hi) merged.back().hi = b.hi;
                } else {
                    merged.push_back(b);
                }
            }
            c.cover = std::move(merged);
        }

        const FieldElement& vhat = parry.hat(static_cast<int>(vi));
        long lo_step = rat_floor(v.dominant_interval().lo * grid_steps).get_si();
        long hi_step = rat_ceil(vhat.dominant_interval().hi * grid_steps).get_si();
        for (long s = std::max(0L, lo_step); s <= hi_step; ++s) {
            Rat x(s, grid_steps);
            x.canonicalize();
            if (x >= 1) break;
            if (x >= out.hi && x >= out.lo) break;
            FieldElement xe = f.from_rational(x);
            if (compare(v, x) == Ordering::Greater) continue;
            if (compare(vhat, x) != Ordering::Greater) break;
            QInterval t = (v - xe).conjugate_box(0).re;
            bool escapes_cover = false, escapes_pts = false;
            for (const auto& [key, c] : cyls) {
                if (!escapes_cover) {
                    bool inside_any = false;
                    for (const auto& b : c.cover)
                        if (!(t.hi < b.lo || t.lo > b.hi)) {
                            inside_any = true;
                            break;
                        }
                    if (!inside_any) escapes_cover = true;
                }
                if (!escapes_pts && (t.hi < c.hull.lo || t.lo > c.hull.hi))
                    escapes_pts = true;
                if (escapes_cover && escapes_pts) break;
            }
            if (escapes_cover) {
                out.found_escape = true;
                out.hi = std::min(out.hi, x);
            }
            if (escapes_pts) out.lo = std::min(out.lo, x);
        }
    }
    if (out.lo > out.hi) out.lo = out.hi;
    if (!out.found_escape) out.hi = Rat(1);
    return out;
}

}  // namespace betatile
