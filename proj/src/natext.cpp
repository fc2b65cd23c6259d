#include "betatile/natext.hpp"

#include "betatile/lattice.hpp"

namespace betatile {

NatExtPoint nat_ext_step(const NatExtPoint& p) {
    if (!p.as_diagonal)
        fail(ErrorCode::OutOfDomain, "only diagonal points are represented exactly");
    return {t_step(p.x), true};
}

bool nat_ext_contains(const FieldElement& x) {
    return is_purely_periodic(x).purely_periodic;
}

std::vector<DomainSlice> domain_slices(const ParryData& parry, int level) {
    std::vector<DomainSlice> out;
    for (size_t vi = 0; vi < parry.V.size(); ++vi) {
        const FieldElement& v = parry.V[vi];
        TileCloud cloud = rauzy_cloud(v, level);
        DomainSlice s;
        s.v = v;
        s.v_hat = parry.hat(static_cast<int>(vi));
        s.level = level;
        s.points.reserve(cloud.points.size());
        for (const auto& p : cloud.points) s.points.push_back(v - p);
        out.push_back(std::move(s));
    }
    return out;
}

CoveringReport covering_degree_estimate(const ParryData& parry, int level, long samples,
                                        const QInterval& window, uint64_t seed) {
    const BetaField& f = *parry.field;
    if (f.num_conjugate_places() != 1 || f.conjugate_places()[0].complex)
        fail(ErrorCode::BadParameters,
             "covering diagnostic implemented for real-quadratic bases");
    ClassExtents ext = class_extents(parry);
    long nabs = f.norm_abs().get_si();
    int addr_depth = (nabs > 1) ? level : 0;

    // Tiles R(x), x in Z[beta] n [0,1), that can reach the window: the
    // point p contributes the box p' + beta'^k * extent, and every p' lies in
    // x' + extent, so |x' - window| <= 2 * global extent is a safe net.
    Rat reach(0);
    for (const auto& e : ext.extent[0])
        reach = std::max(reach, std::max(Rat(abs(e.lo)), Rat(abs(e.hi))));
    reach = reach * 2 + 1;
    Rat mid = window.mid();
    Rat half = window.width() / 2;
    EmbeddingWindow lat_win{QInterval{Rat(0), Rat(1)}, {half + reach + abs(mid)}};
    std::vector<FieldElement> bases = enumerate_lattice_window(f, lat_win);

    // per tile: map address string -> merged arch intervals
    struct TileIndex {
        std::map<std::vector<int>, std::vector<QInterval>> by_address;
    };
    std::vector<TileIndex> tiles;
    QInterval support = window;  // replaced by the accumulated box hull
    bool support_init = false;
    for (const auto& x : bases) {
        if (compare(x, Rat(0)) == Ordering::Less || compare(x, Rat(1)) != Ordering::Less)
            continue;
        TileCloud cloud = rauzy_cloud(x, level, std::max(level, 18));
        TileIndex idx;
        for (size_t i = 0; i < cloud.points.size(); ++i) {
            QInterval box = point_outer_box_real(parry, ext, cloud, i)[0];
            if (box.hi < window.lo || box.lo > window.hi) continue;
            std::vector<int> key = addr_depth
                    ? cloud.addresses[i]
                    : std::vector<int>{};
            idx.by_address[key].push_back(box);
            if (!support_init) {
                support = box;
                support_init = true;
            } else {
                support.lo = std::min(support.lo, box.lo);
                support.hi = std::max(support.hi, box.hi);
            }
        }
        for (auto& [key, list] : idx.by_address) {
            std::sort(list.begin(), list.end(),
                      [](const QInterval& a, const QInterval& b) { return a.lo < b.lo; });
            std::vector<QInterval> merged;
            for (const auto& b : list) {
                if (!merged.empty() && b.lo <= merged.back().hi) {
                    if (b.hi > merged.back().hi) merged.back().hi = b.hi;
                } else {
                    merged.push_back(b);
                }
            }
            list = std::move(merged);
        }
        if (!idx.by_address.empty()) tiles.push_back(std::move(idx));
    }

    CoveringReport rep;
    rep.tiles_considered = static_cast<long>(tiles.size());
    SplitMix64 rng(seed);
    for (long s = 0; s < samples; ++s) {
        Rat t = window.lo + rng.unit() * window.width();
        std::vector<int> addr(addr_depth);
        for (int j = 0; j < addr_depth; ++j)
            addr[j] = static_cast<int>(rng.below(static_cast<uint64_t>(nabs)));
        int hits = 0;
        for (const auto& tile : tiles) {
            auto it = tile.by_address.find(addr);
            if (it == tile.by_address.end()) continue;
            for (const auto& b : it->second) {
                if (b.lo <= t && t <= b.hi) {
                    ++hits;
                    break;
                }
            }
        }
        ++rep.samples;
        if (hits == 0 && (!support_init || t < support.lo || t > support.hi)) {
            ++rep.out_of_stripe;
            continue;
        }
        rep.histogram[hits]++;
    }
    long best = -1;
    long in_stripe = rep.samples - rep.out_of_stripe;
    for (const auto& [count, n] : rep.histogram) {
        if (n > best) {
            best = n;
            rep.modal_count = count;
        }
    }
    rep.modal_fraction = in_stripe > 0 ? static_cast<double>(rep.histogram[rep.modal_count]) /
                                             static_cast<double>(in_stripe)
                                       : 0.0;
    return rep;
}

}  // namespace betatile
