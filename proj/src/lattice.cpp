#include "betatile/lattice.hpp"

#include <complex>
#include <functional>

namespace betatile {

namespace {

using CD = std::complex<double>;

// Upper bounds |inv(W)[i][j]| for the embedding matrix W[p][i] = root_p^i,
// via the adjugate over complex interval arithmetic.
std::vector<std::vector<Rat>> inverse_magnitudes(const BetaField& f) {
    int d = f.degree();
    std::vector<CBox> roots;
    roots.push_back(CBox(f.beta_interval()));
    for (const auto& pl : f.conjugate_places()) {
        roots.push_back(pl.box);
        if (pl.complex) {
            CBox conj{pl.box.re, QInterval{-pl.box.im.hi, -pl.box.im.lo}};
            roots.push_back(conj);
        }
    }
    // W rows: places, cols: powers
    std::vector<std::vector<CBox>> W(d, std::vector<CBox>(d));
    for (int p = 0; p < d; ++p) {
        CBox acc{QInterval(Rat(1)), QInterval(Rat(0))};
        for (int i = 0; i < d; ++i) {
            W[p][i] = acc;
            acc = acc * roots[p];
        }
    }
    // determinant by Laplace expansion (d is tiny)
    std::function<CBox(std::vector<int>, std::vector<int>)> det =
        [&](std::vector<int> rws, std::vector<int> cls) -> CBox {
        if (rws.size() == 1) return W[rws[0]][cls[0]];
        CBox acc{QInterval(Rat(0)), QInterval(Rat(0))};
        for (size_t k = 0; k < cls.size(); ++k) {
            std::vector<int> sub_r(rws.begin() + 1, rws.end());
            std::vector<int> sub_c;
            for (size_t j = 0; j < cls.size(); ++j)
                if (j != k) sub_c.push_back(cls[j]);
            CBox term = W[rws[0]][cls[k]] * det(sub_r, sub_c);
            if (k % 2) term = term * Rat(-1);
            acc = acc + term;
        }
        return acc;
    };
    std::vector<int> all(d);
    for (int i = 0; i < d; ++i) all[i] = i;
    CBox D = det(all, all);
    Rat dlow = D.mod_lower();
    if (sgn(dlow) == 0)
        fail(ErrorCode::PrecisionExhausted, "embedding matrix determinant enclosure hits 0");

    std::vector<std::vector<Rat>> mag(d, std::vector<Rat>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            // inv[i][j] = cofactor(j,i) / det
            std::vector<int> rws, cls;
            for (int r = 0; r < d; ++r)
                if (r != j) rws.push_back(r);
            for (int c = 0; c < d; ++c)
                if (c != i) cls.push_back(c);
            CBox cof = rws.empty() ? CBox{QInterval(Rat(1)), QInterval(Rat(0))} : det(rws, cls);
            Rat m = cof.mod_upper() / dlow;
            mag[i][j] = m;
        }
    }
    return mag;
}

}  // namespace

std::vector<FieldElement> enumerate_lattice_window(const BetaField& field,
                                                   const EmbeddingWindow& window,
                                                   long cap) {
    int d = field.degree();
    auto mag = inverse_magnitudes(field);

    // place value magnitude bounds: dominant from the interval, conjugates
    // from the given radii (duplicated for the mirrored complex embeddings)
    std::vector<Rat> place_bound;
    place_bound.push_back(window.dominant.abs_upper());
    for (int p = 0; p < field.num_conjugate_places(); ++p) {
        place_bound.push_back(window.conj_bounds[p]);
        if (field.conjugate_places()[p].complex) place_bound.push_back(window.conj_bounds[p]);
    }

    std::vector<long> coeff_bound(d);
    double loops = 1;
    for (int i = 0; i < d; ++i) {
        Rat b(0);
        for (int j = 0; j < d; ++j) b += mag[i][j] * place_bound[j];
        coeff_bound[i] = rat_floor(b).get_si() + 1;
        loops *= 2.0 * static_cast<double>(coeff_bound[i]) + 1.0;
    }
    // raw product guard against pathological ranges; the pruned walk below is
    // what actually bounds the work (visit cap)
    if (loops > 1e9) fail(ErrorCode::BoxTooLarge, "lattice scan range exceeds cap");

    // double-precision prefilter data
    double beta_mid = field.beta_interval().mid_double();
    struct PlaceD { CD root; double bound; bool dominant; double lo, hi; };
    std::vector<PlaceD> pl;
    pl.push_back({CD(beta_mid, 0.0), 0.0, true,
                  window.dominant.lo.get_d(), window.dominant.hi.get_d()});
    for (int p = 0; p < field.num_conjugate_places(); ++p) {
        const auto& b = field.conjugate_places()[p].box;
        pl.push_back({CD(b.re.mid_double(), b.im.mid_double()),
                      window.conj_bounds[p].get_d(), false, 0, 0});
    }
    // remaining-sum bounds per depth: sum_{i < m} coeff_bound[i] |root|^i
    std::vector<std::vector<double>> rem(pl.size(), std::vector<double>(d + 1, 0.0));
    for (size_t p = 0; p < pl.size(); ++p)
        for (int m = 1; m <= d; ++m)
            rem[p][m] = rem[p][m - 1] +
                        static_cast<double>(coeff_bound[m - 1]) * std::pow(std::abs(pl[p].root), m - 1);

    std::vector<FieldElement> out;
    std::vector<long> c(d, 0);
    std::vector<std::vector<CD>> partial(pl.size(), std::vector<CD>(d + 1, CD(0, 0)));
    long visited = 0;

    const double margin = 1e-6;
    std::function<void(int)> descend = [&](int i) {
        if (++visited > 64L * cap)
            fail(ErrorCode::BoxTooLarge, "lattice scan visit cap exceeded");
        if (i < 0) {
            std::vector<Rat> coeffs(d);
            for (int k = 0; k < d; ++k) coeffs[k] = Rat(c[k]);
            FieldElement x = field.element(std::move(coeffs));
            // exact filters: dominant range, conjugate bounds (not decisively out)
            QInterval dom = x.dominant_interval();
            if (dom.hi < window.dominant.lo || dom.lo > window.dominant.hi) return;
            if (gt(x, window.dominant.hi) || lt(x, window.dominant.lo)) return;
            for (int p = 0; p < field.num_conjugate_places(); ++p) {
                Rat b = window.conj_bounds[p];
                if (x.conjugate_box(p).sqmod_lower() > b * b) return;
            }
            if (static_cast<long>(out.size()) >= cap)
                fail(ErrorCode::BoxTooLarge, "lattice scan result cap exceeded");
            out.push_back(std::move(x));
            return;
        }
        for (long v = -coeff_bound[i]; v <= coeff_bound[i]; ++v) {
            c[i] = v;
            bool ok = true;
            for (size_t p = 0; p < pl.size() && ok; ++p) {
                CD part = partial[p][i + 1] +
                          static_cast<double>(v) * std::pow(pl[p].root, i);
                partial[p][i] = part;
                double slack = rem[p][i] + margin * (1.0 + std::abs(part));
                if (pl[p].dominant) {
                    double t = part.real();
                    if (t < pl[p].lo - slack || t > pl[p].hi + slack) ok = false;
                } else {
                    if (std::abs(part) > pl[p].bound + slack) ok = false;
                }
            }
            if (ok) descend(i - 1);
        }
    };
    descend(d - 1);

    std::sort(out.begin(), out.end(), FieldElementLess{});
    return out;
}

}  // namespace betatile
