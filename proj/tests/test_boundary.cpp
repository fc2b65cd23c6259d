#include <doctest.h>

#include "betatile/boundary.hpp"

#include <map>
#include <set>
#include <sstream>

using namespace betatile;

namespace {

BetaField make(std::initializer_list<long> desc, unsigned bits = 96) {
    IntPoly p;
    for (auto it = std::rbegin(desc); it != std::rend(desc); ++it) p.push_back(Int(*it));
    return BetaField::make(p, bits);
}

using EdgeKey = std::tuple<std::vector<Rat>, std::vector<Rat>, std::vector<Rat>,  // v,x,w
                           std::vector<Rat>, std::vector<Rat>, std::vector<Rat>,  // v1,x1,w1
                           int, int>;                                             // a,b

std::multiset<EdgeKey> edge_multiset(const BoundaryGraph& g) {
    std::multiset<EdgeKey> out;
    for (const auto& e : g.edges) {
        const BGNode& s = g.nodes[e.from];
        const BGNode& t = g.nodes[e.to];
        out.insert({g.parry->V[s.v].coeffs(), s.x.coeffs(), g.parry->V[s.w].coeffs(),
                    g.parry->V[t.v].coeffs(), t.x.coeffs(), g.parry->V[t.w].coeffs(), e.a,
                    e.b});
    }
    return out;
}

std::set<std::vector<Rat>> middle_set(const BoundaryGraph& g) {
    std::set<std::vector<Rat>> out;
    for (const auto& n : g.nodes) out.insert(n.x.coeffs());
    return out;
}

// induced subgraph on nodes whose middle lies in the given set
BoundaryGraph induced_on_middles(const BoundaryGraph& g,
                                 const std::set<std::vector<Rat>>& mids) {
    BoundaryGraph out;
    out.parry = g.parry;
    std::vector<int> remap(g.nodes.size(), -1);
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (mids.count(g.nodes[i].x.coeffs())) {
            remap[i] = static_cast<int>(out.nodes.size());
            out.nodes.push_back(g.nodes[i]);
        }
    }
    for (const auto& e : g.edges)
        if (remap[e.from] >= 0 && remap[e.to] >= 0)
            out.edges.push_back({remap[e.from], remap[e.to], e.a, e.b});
    return out;
}

// determinant of a rational matrix (Gaussian elimination)
Rat det_rat(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    Rat det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && sgn(m[piv][c]) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (sgn(m[r][c]) == 0) continue;
            Rat f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

// char poly of the merged adjacency evaluated at x: det(x I - A)
Rat charpoly_at(const std::vector<std::vector<Int>>& A, const Rat& x) {
    size_t n = A.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = (i == j) ? Rat(x - Rat(A[i][j])) : Rat(-Rat(A[i][j]));
    return det_rat(std::move(m));
}

}  // namespace

TEST_CASE("candidate nodes: golden base middles include +-(beta-1), +-(2-beta)") {
    BetaField f = make({1, -1, -1});
    ParryData p = parry_data(f);
    auto cand = candidate_nodes(p);
    std::set<std::vector<Rat>> mids;
    for (const auto& n : cand) {
        CHECK(!n.x.is_zero());  // x = 0 never emitted
        mids.insert(n.x.coeffs());
    }
    FieldElement v = f.beta() - Rat(1);
    CHECK(mids.count(v.coeffs()));
    CHECK(mids.count((-v).coeffs()));
    CHECK(mids.count((f.one() - v).coeffs()));
    CHECK(mids.count((v - Rat(1)).coeffs()));
}

TEST_CASE("boundary graph for beta^2 = 3beta+2 matches the explicit quadratic lists") {
    BetaField f = make({1, -3, -2});
    ParryData p = parry_data(f);
    BoundaryGraph full = build_boundary_graph(p);

    // every node has out-degree >= 1 after pruning
    for (size_t i = 0; i < full.nodes.size(); ++i) CHECK(full.out_degree(static_cast<int>(i)) >= 1);

    // negation symmetry of nodes and labeled edge multiplicities
    for (const auto& n : full.nodes)
        CHECK(full.find_node(n.w, -n.x, n.v) >= 0);
    std::map<EdgeKey, int> counts;
    for (const auto& key : edge_multiset(full)) counts[key]++;
    for (const auto& [key, c] : counts) {
        auto [v, x, w, v1, x1, w1, a, b] = key;
        auto neg = [](std::vector<Rat> t) {
            for (auto& q : t) q = -q;
            return t;
        };
        EdgeKey mirrored{w, neg(x), v, w1, neg(x1), v1, b, a};
        CHECK(counts[mirrored] == c);
    }

    // induced subgraph on middles +-{beta-3, 4-beta} == the 2b > a transition list
    FieldElement v = f.beta() - Rat(3);
    std::set<std::vector<Rat>> mids{v.coeffs(), (-v).coeffs(), (f.one() - v).coeffs(),
                                    (v - Rat(1)).coeffs()};
    BoundaryGraph induced = induced_on_middles(full, mids);
    BoundaryGraph pruned = pruned_quadratic_graph(f, p, 3, 2);
    CHECK(induced.nodes.size() == 6);
    CHECK(induced.edges.size() == 12);
    CHECK(edge_multiset(induced) == edge_multiset(pruned));

    // merging equal middles gives the four-state graph with rho = b = 2
    MergedGraph merged = merge_by_middle(pruned);
    REQUIRE(merged.middles.size() == 4);
    for (size_t i = 0; i < merged.middles.size(); ++i) {
        Int deg(0);
        for (size_t j = 0; j < merged.middles.size(); ++j) deg += merged.adjacency[i][j];
        CHECK(deg == f.norm_abs());  // exactly |N(beta)| outgoing transitions
    }
    QInterval rho = merged_spectral_radius(merged, 32);
    CHECK(rho.lo == Rat(2));
    CHECK(rho.hi == Rat(2));

    // char-poly oracle: det(x I - A) == x^4 - b^2 x^2 at five sample points
    for (long s : {-3L, -1L, 0L, 2L, 5L}) {
        Rat x(s);
        Rat expect = x * x * x * x - Rat(4) * x * x;
        CHECK(charpoly_at(merged.adjacency, x) == expect);
    }
}

TEST_CASE("boundary graph for the golden base: 2-cycle plus feeders") {
    BetaField f = make({1, -1, -1});
    ParryData p = parry_data(f);
    BoundaryGraph full = build_boundary_graph(p);
    MergedGraph merged = merge_by_middle(full);
    REQUIRE(merged.middles.size() == 4);
    // each merged state has exactly |N(beta)| = 1 outgoing edge
    for (size_t i = 0; i < merged.middles.size(); ++i) {
        Int deg(0);
        for (size_t j = 0; j < merged.middles.size(); ++j) deg += merged.adjacency[i][j];
        CHECK(deg == Int(1));
    }
    QInterval rho = merged_spectral_radius(merged, 32);
    CHECK(rho.lo == Rat(1));
    CHECK(rho.hi == Rat(1));
    // full graph matches the hand-traced description: a 1-edge 2-cycle between
    // middles a+1-beta and beta-a-1 with feeders from +-(beta-a)
    QInterval rho_full = spectral_radius_enclosure(full, 32);
    CHECK(rho_full.lo == Rat(1));
    CHECK(rho_full.hi == Rat(1));
}

TEST_CASE("pruned quadratic graph parameter checks and counts") {
    // (1,1): each merged state has exactly 1 outgoing edge
    {
        BetaField f = make({1, -1, -1});
        ParryData p = parry_data(f);
        BoundaryGraph g = pruned_quadratic_graph(f, p, 1, 1);
        MergedGraph m = merge_by_middle(g);
        for (size_t i = 0; i < m.middles.size(); ++i) {
            Int deg(0);
            for (size_t j = 0; j < m.middles.size(); ++j) deg += m.adjacency[i][j];
            CHECK(deg == Int(1));
        }
    }
    // (4,2): 2b <= a; transitions from [v,v-1,0] are (d, d+a-b+1), 0 <= d < b
    {
        BetaField f = make({1, -4, -2});
        ParryData p = parry_data(f);
        BoundaryGraph g = pruned_quadratic_graph(f, p, 4, 2);
        FieldElement v = f.beta() - Rat(4);
        int src = -1;
        for (size_t i = 0; i < g.nodes.size(); ++i)
            if (g.nodes[i].x == v - Rat(1)) src = static_cast<int>(i);
        REQUIRE(src >= 0);
        std::multiset<std::pair<int, int>> labels;
        for (const auto& e : g.edges)
            if (e.from == src) labels.insert({e.a, e.b});
        CHECK(labels == std::multiset<std::pair<int, int>>{{0, 3}, {1, 4}});
        // six unmerged nodes in the 2b <= a case as well
        CHECK(g.nodes.size() == 6);
    }
    // bad parameters
    {
        BetaField f = make({1, -3, -2});
        ParryData p = parry_data(f);
        CHECK_THROWS_AS(pruned_quadratic_graph(f, p, 2, 3), Error);
    }
}

TEST_CASE("pruned graph is an induced subgraph of the full boundary graph") {
    for (auto [a, b] : {std::pair<long, long>{2, 2}, {3, 2}, {1, 1}}) {
        IntPoly poly{Int(-b), Int(-a), Int(1)};
        BetaField f = BetaField::make(poly, 96);
        ParryData p = parry_data(f);
        BoundaryGraph full = build_boundary_graph(p);
        BoundaryGraph pruned = pruned_quadratic_graph(f, p, a, b);
        std::set<std::vector<Rat>> mids;
        for (const auto& n : pruned.nodes) mids.insert(n.x.coeffs());
        BoundaryGraph induced = induced_on_middles(full, mids);
        CHECK(edge_multiset(induced) == edge_multiset(pruned));
    }
}

TEST_CASE("tiling verdicts: quadratic and cubic bases") {
    for (auto desc : {std::initializer_list<long>{1, -1, -1},
                      std::initializer_list<long>{1, -2, -2},
                      std::initializer_list<long>{1, -3, -2}}) {
        BetaField f = make(desc);
        ParryData p = parry_data(f);
        BoundaryGraph g = build_boundary_graph(p);
        TilingResult r = decide_tiling(f, g);
        CHECK(r.verdict == TilingVerdict::Tiling);
        CHECK(r.rho.hi < r.beta.lo);  // certificate
    }
}

TEST_CASE("tiling verdict for the smallest Pisot number") {
    BetaField f = make({1, 0, -1, -1});
    ParryData p = parry_data(f);
    BoundaryGraph g = build_boundary_graph(p);
    CHECK(g.nodes.size() >= 1);
    TilingResult r = decide_tiling(f, g);
    CHECK(r.verdict == TilingVerdict::Tiling);
    CHECK(r.rho.hi < r.beta.lo);
}

TEST_CASE("spectral radius edge cases") {
    BetaField f = make({1, -1, -1});
    ParryData p = parry_data(f);
    // empty graph
    BoundaryGraph empty;
    empty.parry = &p;
    QInterval rho = spectral_radius_enclosure(empty, 8);
    CHECK(rho.lo == Rat(0));
    CHECK(rho.hi == Rat(0));
    // single node with one self-loop
    BoundaryGraph loop;
    loop.parry = &p;
    loop.nodes.push_back({0, f.one() - f.beta(), 0});
    loop.edges.push_back({0, 0, 0, 0});
    QInterval r1 = spectral_radius_enclosure(loop, 8);
    CHECK(r1.lo == Rat(1));
    CHECK(r1.hi == Rat(1));
}

TEST_CASE("pruning is idempotent and refinement does not flip verdicts") {
    BetaField f = make({1, -2, -2});
    ParryData p = parry_data(f);
    BoundaryGraph g1 = build_boundary_graph(p);
    BoundaryGraph g2 = build_boundary_graph(p);
    CHECK(edge_multiset(g1) == edge_multiset(g2));
    TilingResult a = decide_tiling(f, g1, 2);
    TilingResult b = decide_tiling(f, g1, 12);
    if (a.verdict != TilingVerdict::Undecided) CHECK(a.verdict == b.verdict);
}

TEST_CASE("DOT export round trip") {
    BetaField f = make({1, -3, -2});
    ParryData p = parry_data(f);
    BoundaryGraph g = pruned_quadratic_graph(f, p, 3, 2);
    std::string dot = export_dot(g);
    // parse back the edge lines "nA -> nB [label=\"(a,b)\"]"
    std::multiset<std::tuple<int, int, int, int>> parsed, expected;
    for (const auto& e : g.edges) expected.insert({e.from, e.to, e.a, e.b});
    std::stringstream ss(dot);
    std::string line;
    while (std::getline(ss, line)) {
        auto arrow = line.find(" -> ");
        if (arrow == std::string::npos) continue;
        int from = std::stoi(line.substr(line.find('n') + 1));
        int to = std::stoi(line.substr(arrow + 5));
        auto paren = line.find('(');
        int a = std::stoi(line.substr(paren + 1));
        int b = std::stoi(line.substr(line.find(',', paren) + 1));
        parsed.insert({from, to, a, b});
    }
    CHECK(parsed == expected);
    // empty graph: header-only body
    BoundaryGraph empty;
    empty.parry = &p;
    std::string d2 = export_dot(empty);
    CHECK(d2.find("->") == std::string::npos);
    CHECK(d2.find("digraph") != std::string::npos);
}
