// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include "betatile/boundary.hpp"
#include "betatile/natext.hpp"
#include "betatile/periodic.hpp"

#include "property_suite.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>

using namespace betatile;

namespace {

BetaField make(std::initializer_list<long> desc, unsigned bits = 96) {
    IntPoly p;
    for (auto it = std::rbegin(desc); it != std::rend(desc); ++it) p.push_back(Int(*it));
    return BetaField::make(p, bits);
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

// ---------------------------------------------------------------------------

void criterion_parry_qm() {
    {
        BetaField f = make({1, -2, -2});
        ParryData p = parry_data(f);
        expect(p.V.size() == 2 && p.V[0].is_zero() && p.V[1] == f.beta() - Rat(2),
               "V != {0, beta-2} for x^2-2x-2");
        expect(p.L_rank == 1 && p.qm_holds, "L rank != 1 for x^2-2x-2");
        expect(p.in_L(f.beta() - Rat(3)), "beta-3 not in L");
        // L = Z(beta-3): the canonical basis row is +-(3,-1)
        expect(p.L_basis.size() == 1 &&
                   ((p.L_basis[0][0] == 3 && p.L_basis[0][1] == -1) ||
                    (p.L_basis[0][0] == -3 && p.L_basis[0][1] == 1)),
               "L basis is not (beta-3)");
    }
    {
        BetaField f = make({1, -2, 1, -1});
        ParryData p = parry_data(f);
        FieldElement b = f.beta(), b2 = f.beta() * f.beta();
        std::vector<FieldElement> expected{f.one(), b - Rat(1), b2 - b - Rat(1),
                                           b2 - b * Rat(2) + Rat(1)};
        expect(p.V_hat.size() == 4, "V_hat size != 4 for x^3-2x^2+x-1");
        for (const auto& e : expected) {
            bool found = false;
            for (const auto& u : p.V_hat)
                if (u == e) found = true;
            expect(found, "missing V_hat element for x^3-2x^2+x-1");
        }
        expect(p.qm_holds, "(QM) should hold for x^3-2x^2+x-1");
    }
    {
        BetaField f = make({1, 0, -1, -1});
        ParryData p = parry_data(f);
        expect(!p.qm_holds, "(QM) should fail for x^3-x-1");
        expect(p.V_hat.size() == 5, "V_hat size != 5 for x^3-x-1");
    }
}

void criterion_boundary_graph() {
    BetaField f = make({1, -3, -2});
    ParryData p = parry_data(f);
    BoundaryGraph full = build_boundary_graph(p);
    BoundaryGraph pruned = pruned_quadratic_graph(f, p, 3, 2);

    // induced subgraph on middles +-{beta-3, 4-beta} == the 2b > a list
    FieldElement v = f.beta() - Rat(3);
    auto key = [&](const BGNode& n, const BoundaryGraph& g) {
        return std::make_tuple(g.parry->V[n.v].coeffs(), n.x.coeffs(),
                               g.parry->V[n.w].coeffs());
    };
    std::set<std::vector<Rat>> mids{v.coeffs(), (-v).coeffs(), (f.one() - v).coeffs(),
                                    (v - Rat(1)).coeffs()};
    std::multiset<std::string> ind_edges, pr_edges;
    auto edge_sig = [&](const BoundaryGraph& g, const BGEdge& e) {
        std::ostringstream os;
        auto [sv, sx, sw] = key(g.nodes[e.from], g);
        auto [tv, tx, tw] = key(g.nodes[e.to], g);
        for (const auto& c : sv) os << c.get_str() << ",";
        for (const auto& c : sx) os << c.get_str() << ",";
        for (const auto& c : sw) os << c.get_str() << "|";
        for (const auto& c : tv) os << c.get_str() << ",";
        for (const auto& c : tx) os << c.get_str() << ",";
        for (const auto& c : tw) os << c.get_str() << "|";
        os << e.a << "," << e.b;
        return os.str();
    };
    size_t induced_nodes = 0;
    for (const auto& n : full.nodes)
        if (mids.count(n.x.coeffs())) ++induced_nodes;
    for (const auto& e : full.edges)
        if (mids.count(full.nodes[e.from].x.coeffs()) &&
            mids.count(full.nodes[e.to].x.coeffs()))
            ind_edges.insert(edge_sig(full, e));
    for (const auto& e : pruned.edges) pr_edges.insert(edge_sig(pruned, e));
    expect(induced_nodes == 6, "induced subgraph must have the six listed nodes");
    expect(pruned.nodes.size() == 6, "pruned graph must have six nodes");
    expect(ind_edges == pr_edges, "induced subgraph differs from the explicit list");

    MergedGraph merged = merge_by_middle(pruned);
    expect(merged.middles.size() == 4, "merged graph must have 4 states");
    QInterval rho = merged_spectral_radius(merged, 32);
    expect(rho.lo == Rat(2) && rho.hi == Rat(2), "merged spectral radius != b = 2");
}

void criterion_tiling_verdicts() {
    for (auto desc : {std::initializer_list<long>{1, -1, -1},
                      std::initializer_list<long>{1, -2, -2},
                      std::initializer_list<long>{1, -3, -2},
                      std::initializer_list<long>{1, 0, -1, -1}}) {
        BetaField f = make(desc);
        ParryData p = parry_data(f);
        BoundaryGraph g = build_boundary_graph(p);
        TilingResult r = decide_tiling(f, g);
        expect(r.verdict == TilingVerdict::Tiling, "verdict not Tiling");
        expect(r.rho.hi < r.beta.lo, "certificate rho-upper < beta-lower missing");
    }
}

void criterion_gamma() {
    // exact value for (3,2)
    GammaResult g = gamma_quadratic(3, 2);
    const BetaField& f32 = g.exact_value->field();
    expect(g.exact, "gamma(3,2) must be exact (gcd = 1)");
    expect(*g.exact_value == (f32.beta() + Rat(2)).inverse(), "gamma(3,2) != 1/(beta+2)");
    Rat target(17977, 100000), tol(1, 10000);
    expect(g.enclosure.lo <= target + tol && g.enclosure.hi >= target - tol,
           "enclosure does not meet 0.17977 within 1e-4");
    expect(g.enclosure.width() < tol, "enclosure too wide");

    // scan q <= 200
    BetaField f = make({1, -3, -2});
    GammaResult scan = gamma_scan(f, 200);
    expect(scan.first_non_pp.has_value(), "scan found no non-pp rational");
    expect(*scan.first_non_pp >= Rat(1797, 10000),
           "non-pp rational below 0.1797 found");
    expect(*scan.first_non_pp < Rat(1, 4),
           "no non-pp rational in [0.1798, 0.25)");

    // gamma(a, 1) = 1 exactly
    for (long a : {1L, 2L, 7L}) {
        GammaResult g1 = gamma_quadratic(a, 1);
        expect(g1.exact && g1.exact_value->as_rational() == Rat(1), "gamma(a,1) != 1");
    }

    // golden scan q <= 100: no non-pp rationals at all
    BetaField golden = make({1, -1, -1});
    GammaResult gs = gamma_scan(golden, 100);
    expect(!gs.first_non_pp.has_value(), "golden scan found a non-pp rational");
    expect(*gs.largest_verified == Rat(1), "golden frontier != 1");
}

void criterion_positive_conjugate() {
    BetaField f = make({1, -3, 1});
    GammaResult g = gamma_scan(f, 20);
    expect(g.shortcut_positive_conjugate, "positive-conjugate shortcut did not fire");
    expect(g.first_non_pp.has_value(), "no non-pp rational found");
    expect(g.first_non_pp->get_den() <= 20, "denominator above 20");
    expect(*g.first_non_pp <= Rat(1, 20), "no non-pp value at or below 0.05");
}

void criterion_property_suite() {
    auto result = betatile_props::run_property_suite(97531);
    expect(result.cases >= 200, "fewer than 200 randomized cases");
    if (!result.failures.empty()) throw Failure(result.failures.front());
}

void criterion_weak_finiteness() {
    for (auto desc : {std::initializer_list<long>{1, -3, -2},
                      std::initializer_list<long>{1, -2, -2}}) {
        BetaField f = make(desc);
        ParryData p = parry_data(f);
        WReport w = check_W(p, 8, 16);
        expect(w.all_found, "weak-finiteness witness missing");
        ExclusivePoint ep = exclusive_point(p, w);
        // re-verify each identity here as well
        for (const auto& x : w.P) {
            FieldElement cur = x + ep.z.pow_beta(-ep.total_steps);
            for (int t = 0; t < ep.total_steps; ++t) cur = t_step(cur);
            expect(cur.is_zero(), "exclusive-point identity failed");
        }
    }
}

void criterion_covering() {
    BetaField f = make({1, -2, -2});
    ParryData p = parry_data(f);
    CoveringReport rep =
        covering_degree_estimate(p, 10, 10000, QInterval{Rat(0), Rat(1)}, 20240817);
    expect(rep.modal_count == 1, "modal hit count != 1");
    expect(rep.modal_fraction >= 0.95, "fewer than 95% of in-stripe samples hit once");
}

void criterion_scope_note() {
    // Haar-measure statements and the natural-extension isomorphism are
    // excluded at desk scale; they are covered only indirectly by the exact
    // set identities above.  Nothing to run.
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void()> run;
    };
    std::vector<Criterion> criteria{
        {"1 Parry/QM reproduction (x^2-2x-2, x^3-2x^2+x-1, x^3-x-1)", criterion_parry_qm},
        {"2 boundary graph x^2-3x-2: explicit lists, merged rho = 2", criterion_boundary_graph},
        {"3 tiling verdicts with certificates (4 bases)", criterion_tiling_verdicts},
        {"4 gamma exact + scans (q <= 200 / q <= 100)", criterion_gamma},
        {"5 positive-conjugate shortcut (x^2-3x+1)", criterion_positive_conjugate},
        {"6 exact set identities, 200+ randomized cases", criterion_property_suite},
        {"7 weak finiteness witnesses + exclusive point", criterion_weak_finiteness},
        {"8 covering degree diagnostic (level 10, 10^4 samples)", criterion_covering},
        {"9 excluded-scope statements (indirect coverage only)", criterion_scope_note},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            c.run();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::printf("[%s] criterion %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", c.name,
                    dt / 1000.0, detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
