#include "betatile/tile.hpp"

namespace betatile {

namespace {

struct Node {
    FieldElement y;  // element of T^-j(x), in [0,1)
    FieldElement p;  // beta^j * y
};

TileCloud build_cloud(const FieldElement& x, int level, TileKind kind, int level_cap,
                      bool with_addresses) {
    const BetaField& f = x.field();
    if (compare(x, Rat(0)) == Ordering::Less || compare(x, Rat(1)) != Ordering::Less)
        fail(ErrorCode::NotInHalfOpenUnit, "tile base point must lie in [0,1)");
    if (kind == TileKind::Integral && !x.is_integral())
        fail(ErrorCode::NotIntegral, "integral tile needs x in Z[beta]");
    if (kind == TileKind::Rauzy && !x.in_z_beta_inv())
        fail(ErrorCode::NotBetaRational, "Rauzy tile needs x in Z[beta^-1]");
    if (level < 0 || level > level_cap)
        fail(ErrorCode::BadParameters, "level outside [0, cap]");

    bool integral_only = (kind == TileKind::Integral);
    std::vector<Node> frontier{{x, x}};
    FieldElement bpow = f.one();
    FieldElement beta = f.beta();
    for (int j = 0; j < level; ++j) {
        std::vector<Node> next;
        next.reserve(frontier.size() * (f.alphabet_max() + 1));
        for (const auto& node : frontier) {
            for (int a = 0; a <= f.alphabet_max(); ++a) {
                FieldElement shifted = node.y + Rat(a);
                if (compare(shifted, beta) != Ordering::Less) continue;  // y' >= 1
                FieldElement y1 = shifted.div_beta();
                if (integral_only && !y1.is_integral()) continue;
                next.push_back({std::move(y1), node.p + bpow * Rat(a)});
            }
        }
        frontier = std::move(next);
        bpow = bpow.mul_beta();
    }

    TileCloud cloud;
    cloud.field = &f;
    cloud.base_point = x;
    cloud.level = level;
    cloud.kind = kind;
    std::sort(frontier.begin(), frontier.end(),
              [](const Node& a, const Node& b) { return a.p.coeffs() < b.p.coeffs(); });
    cloud.points.reserve(frontier.size());
    cloud.preimages.reserve(frontier.size());
    for (auto& n : frontier) {
        cloud.points.push_back(std::move(n.p));
        cloud.preimages.push_back(std::move(n.y));
    }

    if (with_addresses && x.is_integral() && f.norm_abs() > 1) {
        cloud.addresses.reserve(cloud.points.size());
        for (const auto& p : cloud.points)
            cloud.addresses.push_back(finite_address(p, level));
    }
    return cloud;
}

}  // namespace

TileCloud rauzy_cloud(const FieldElement& x, int level, int level_cap, bool with_addresses) {
    return build_cloud(x, level, TileKind::Rauzy, level_cap, with_addresses);
}

TileCloud integral_cloud(const FieldElement& x, int level, int level_cap, bool with_addresses) {
    return build_cloud(x, level, TileKind::Integral, level_cap, with_addresses);
}

bool translation_identity_check(const ParryData& parry, const FieldElement& x,
                                const FieldElement& v, int level) {
    int vi = -1;
    for (size_t i = 0; i < parry.V.size(); ++i)
        if (parry.V[i] == v) vi = static_cast<int>(i);
    if (vi < 0) fail(ErrorCode::BadParameters, "v is not an element of V");
    if (compare(x, v) == Ordering::Less ||
        compare(x, parry.hat(vi)) != Ordering::Less)
        fail(ErrorCode::WrongInterval, "x not in [v, v-hat)");

    TileCloud cx = rauzy_cloud(x, level);
    TileCloud cv = rauzy_cloud(v, level);
    if (cx.size() != cv.size()) return false;
    std::vector<std::vector<Rat>> sx, sv;
    for (const auto& p : cx.points) sx.push_back((p - x).coeffs());
    for (const auto& p : cv.points) sv.push_back((p - v).coeffs());
    std::sort(sx.begin(), sx.end());
    std::sort(sv.begin(), sv.end());
    return sx == sv;
}

namespace {

// non-dominant embedding as a flat real vector (complex places contribute
// two coordinates); used for numeric distances only
std::vector<double> arch_coords(const FieldElement& p) {
    std::vector<double> out;
    const BetaField& f = p.field();
    for (int pl = 0; pl < f.num_conjugate_places(); ++pl) {
        CBox b = p.conjugate_box(pl);
        out.push_back(b.re.mid_double());
        if (f.conjugate_places()[pl].complex) out.push_back(b.im.mid_double());
    }
    return out;
}

double max_metric(const std::vector<double>& a, const std::vector<double>& b,
                  const BetaField& f) {
    double dist = 0;
    size_t idx = 0;
    for (int pl = 0; pl < f.num_conjugate_places(); ++pl) {
        if (f.conjugate_places()[pl].complex) {
            double dr = a[idx] - b[idx], di = a[idx + 1] - b[idx + 1];
            dist = std::max(dist, std::hypot(dr, di));
            idx += 2;
        } else {
            dist = std::max(dist, std::abs(a[idx] - b[idx]));
            idx += 1;
        }
    }
    return dist;
}

}  // namespace

HausdorffDefect hausdorffdefect_impl(const TileCloud& ck, const TileCloud& ck1) {
    const BetaField& f = *ck.field;
    Rat mod_max(0);
    for (int pl = 0; pl < f.num_conjugate_places(); ++pl)
        mod_max = std::max(mod_max, f.conj_mod_upper(pl));
    Rat bound(f.alphabet_max());
    for (int i = 0; i < ck.level; ++i) bound *= mod_max;

    std::vector<std::vector<double>> old_pts, new_pts;
    for (const auto& p : ck.points) old_pts.push_back(arch_coords(p));
    for (const auto& p : ck1.points) new_pts.push_back(arch_coords(p));
    double measured = 0;
    for (const auto& np : new_pts) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& op : old_pts) best = std::min(best, max_metric(np, op, f));
        measured = std::max(measured, best);
    }
    return {bound, measured};
}

HausdorffDefect hausdorff_defect(const TileCloud& ck, const TileCloud& ck1) {
    if (ck.field != ck1.field || ck.base_point != ck1.base_point ||
        ck.kind != ck1.kind || ck1.level != ck.level + 1)
        fail(ErrorCode::LevelMismatch, "need consecutive levels of the same tile");
    return hausdorffdefect_impl(ck, ck1);
}

std::vector<TileCloud> periodic_patch(const ParryData& parry,
                                      const std::vector<FieldElement>& translates,
                                      int level, bool allow_without_qm) {
    if (!parry.qm_holds && !allow_without_qm)
        fail(ErrorCode::QMViolated,
             "periodic collection is locally finite only under the quotient mapping condition");
    const BetaField& f = *parry.field;
    for (const auto& t : translates)
        if (!parry.in_L(t))
            fail(ErrorCode::BadParameters, "translate not in L");

    TileCloud central = rauzy_cloud(f.zero(), level);
    std::vector<TileCloud> out;
    out.reserve(translates.size());
    for (const auto& t : translates) {
        TileCloud c;
        c.field = &f;
        c.base_point = t;
        c.level = level;
        c.kind = TileKind::Rauzy;
        c.points.reserve(central.points.size());
        for (const auto& p : central.points) c.points.push_back(p + t);
        c.preimages = central.preimages;  // translated subtrees keep their classes
        if (f.norm_abs() > 1) {
            c.addresses.reserve(c.points.size());
            for (const auto& p : c.points)
                c.addresses.push_back(finite_address(p, level));
        }
        out.push_back(std::move(c));
    }
    return out;
}

ClassExtents class_extents(const ParryData& parry, int iterations) {
    const BetaField& f = *parry.field;
    int np = f.num_conjugate_places();
    int nv = static_cast<int>(parry.V.size());
    ClassExtents ce;
    ce.extent.assign(np, {});

    // digit/class transitions of the set equation: R(v) = U_a beta R((a+v)/beta)
    std::vector<std::vector<std::pair<int, int>>> trans(nv);  // v -> [(digit, w)]
    FieldElement beta = f.beta();
    for (int vi = 0; vi < nv; ++vi) {
        for (int a = 0; a <= f.alphabet_max(); ++a) {
            FieldElement shifted = parry.V[vi] + Rat(a);
            if (compare(shifted, beta) != Ordering::Less) continue;
            FieldElement y = shifted.div_beta();
            trans[vi].push_back({a, parry.v_floor_index(y)});
        }
    }

    for (int pl = 0; pl < np; ++pl) {
        Rat c = f.tail_bound(pl);
        std::vector<QInterval> ext(nv, QInterval{-c, c});
        if (!f.conjugate_places()[pl].complex) {
            QInterval bsig = f.conjugate_places()[pl].box.re;
            for (int it = 0; it < iterations; ++it) {
                std::vector<QInterval> next(nv);
                for (int vi = 0; vi < nv; ++vi) {
                    bool first = true;
                    QInterval hull;
                    for (auto [a, wi] : trans[vi]) {
                        QInterval piece = bsig * ext[wi] + Rat(a);
                        if (first) {
                            hull = piece;
                            first = false;
                        } else {
                            hull = QInterval{std::min(hull.lo, piece.lo),
                                             std::max(hull.hi, piece.hi)};
                        }
                    }
                    next[vi] = hull;
                }
                ext = std::move(next);
            }
        }
        ce.extent[pl] = std::move(ext);
    }
    return ce;
}

namespace {

std::vector<QInterval> outer_box_for_class(const ParryData& parry, const ClassExtents& ext,
                                           const FieldElement& point, int level, int vi) {
    const BetaField& f = *parry.field;
    std::vector<QInterval> out;
    for (int pl = 0; pl < f.num_conjugate_places(); ++pl) {
        QInterval bpow{Rat(1), Rat(1)};
        if (f.conjugate_places()[pl].complex) {
            Rat m = f.conj_mod_upper(pl);
            Rat mk(1);
            for (int i = 0; i < level; ++i) mk *= m;
            QInterval spread = ext.extent[pl][vi] * QInterval{-mk, mk};
            out.push_back(point.conjugate_box(pl).re + spread);
        } else {
            QInterval bs = f.conjugate_places()[pl].box.re;
            for (int i = 0; i < level; ++i) bpow = bpow * bs;
            out.push_back(point.conjugate_box(pl).re + bpow * ext.extent[pl][vi]);
        }
    }
    return out;
}

}  // namespace

std::vector<QInterval> point_outer_box_real(const ParryData& parry,
                                            const ClassExtents& ext,
                                            const FieldElement& point, int level) {
    FieldElement y = point.pow_beta(-level);
    return outer_box_for_class(parry, ext, point, level, parry.v_floor_index(y));
}

std::vector<QInterval> point_outer_box_real(const ParryData& parry,
                                            const ClassExtents& ext,
                                            const TileCloud& cloud, size_t index) {
    return outer_box_for_class(parry, ext, cloud.points[index], cloud.level,
                               parry.v_floor_index(cloud.preimages[index]));
}

}  // namespace betatile
