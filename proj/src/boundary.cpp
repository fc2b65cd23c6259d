#include "betatile/boundary.hpp"

#include "betatile/lattice.hpp"

#include <array>
#include <map>
#include <sstream>
#include <tuple>

namespace betatile {

std::vector<std::vector<Int>> BoundaryGraph::adjacency() const {
    std::vector<std::vector<Int>> A(nodes.size(), std::vector<Int>(nodes.size(), Int(0)));
    for (const auto& e : edges) A[e.from][e.to] += 1;
    return A;
}

int BoundaryGraph::find_node(int v, const FieldElement& x, int w) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].v == v && nodes[i].w == w && nodes[i].x == x)
            return static_cast<int>(i);
    return -1;
}

size_t BoundaryGraph::out_degree(int node) const {
    size_t n = 0;
    for (const auto& e : edges)
        if (e.from == node) ++n;
    return n;
}

std::vector<BGNode> candidate_nodes(const ParryData& parry, long cap) {
    const BetaField& f = *parry.field;
    int nv = static_cast<int>(parry.V.size());
    int np = f.num_conjugate_places();

    // per-pair data: dominant range (w - v_hat, w_hat - v) and conjugate bounds
    struct PairBound {
        FieldElement lo, hi;
        std::vector<Rat> conj;
    };
    std::vector<std::vector<PairBound>> pb(nv);
    Rat glo(0), ghi(0);
    std::vector<Rat> gconj(np, Rat(0));
    for (int v = 0; v < nv; ++v) {
        for (int w = 0; w < nv; ++w) {
            PairBound b{parry.V[w] - parry.hat(v), parry.hat(w) - parry.V[v], {}};
            for (int pl = 0; pl < np; ++pl) {
                Rat mv = parry.V[v].conjugate_box(pl).mod_upper();
                Rat mw = parry.V[w].conjugate_box(pl).mod_upper();
                Rat mwv = (parry.V[w] - parry.V[v]).conjugate_box(pl).mod_upper();
                Rat bd = mv + mw + mwv + Rat(2) * f.tail_bound(pl);
                b.conj.push_back(bd);
                gconj[pl] = std::max(gconj[pl], bd);
            }
            glo = std::min(glo, b.lo.dominant_interval().lo);
            ghi = std::max(ghi, b.hi.dominant_interval().hi);
            pb[v].push_back(std::move(b));
        }
    }

    EmbeddingWindow win{QInterval{glo, ghi}, gconj};
    std::vector<FieldElement> middles = enumerate_lattice_window(f, win, cap);

    std::vector<BGNode> out;
    for (const auto& x : middles) {
        if (x.is_zero()) continue;
        for (int v = 0; v < nv; ++v) {
            for (int w = 0; w < nv; ++w) {
                const PairBound& b = pb[v][w];
                if (compare(x, b.lo) != Ordering::Greater) continue;
                if (compare(x, b.hi) != Ordering::Less) continue;
                bool inside = true;
                for (int pl = 0; pl < np && inside; ++pl)
                    if (x.conjugate_box(pl).sqmod_lower() > b.conj[pl] * b.conj[pl])
                        inside = false;
                if (inside) out.push_back({v, x, w});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const BGNode& a, const BGNode& c) {
        return std::tie(a.v, a.x.coeffs(), a.w) < std::tie(c.v, c.x.coeffs(), c.w);
    });
    return out;
}

BoundaryGraph build_boundary_graph(const ParryData& parry, long cap) {
    const BetaField& f = *parry.field;
    std::vector<BGNode> cand = candidate_nodes(parry, cap);

    std::map<std::tuple<int, std::vector<Rat>, int>, int> index;
    for (size_t i = 0; i < cand.size(); ++i)
        index[{cand[i].v, cand[i].x.coeffs(), cand[i].w}] = static_cast<int>(i);

    // successor data of the interval structure: (a+v)/beta and its V-floor
    int nv = static_cast<int>(parry.V.size());
    std::vector<std::vector<int>> vstep(nv, std::vector<int>(f.alphabet_max() + 1, -1));
    FieldElement beta = f.beta();
    for (int v = 0; v < nv; ++v)
        for (int a = 0; a <= f.alphabet_max(); ++a) {
            FieldElement shifted = parry.V[v] + Rat(a);
            if (compare(shifted, beta) != Ordering::Less) continue;
            vstep[v][a] = parry.v_floor_index(shifted.div_beta());
        }

    std::vector<BGEdge> edges;
    for (size_t i = 0; i < cand.size(); ++i) {
        const BGNode& n = cand[i];
        for (int a = 0; a <= f.alphabet_max(); ++a) {
            if (vstep[n.v][a] < 0) continue;
            for (int b = 0; b <= f.alphabet_max(); ++b) {
                if (vstep[n.w][b] < 0) continue;
                FieldElement x1 = (n.x + Rat(b - a)).div_beta();
                if (!x1.is_integral() || x1.is_zero()) continue;
                auto it = index.find({vstep[n.v][a], x1.coeffs(), vstep[n.w][b]});
                if (it == index.end()) continue;
                edges.push_back({static_cast<int>(i), it->second, a, b});
            }
        }
    }

    // peel nodes without outgoing edges to a fixpoint
    std::vector<int> outdeg(cand.size(), 0);
    std::vector<std::vector<int>> in_edges(cand.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        outdeg[edges[e].from]++;
        in_edges[edges[e].to].push_back(static_cast<int>(e));
    }
    std::vector<bool> dead(cand.size(), false);
    std::vector<int> queue;
    for (size_t i = 0; i < cand.size(); ++i)
        if (outdeg[i] == 0) queue.push_back(static_cast<int>(i));
    while (!queue.empty()) {
        int n = queue.back();
        queue.pop_back();
        if (dead[n]) continue;
        dead[n] = true;
        for (int e : in_edges[n]) {
            int src = edges[e].from;
            if (dead[src]) continue;
            if (--outdeg[src] == 0) queue.push_back(src);
        }
    }

    BoundaryGraph g;
    g.parry = &parry;
    std::vector<int> remap(cand.size(), -1);
    for (size_t i = 0; i < cand.size(); ++i) {
        if (dead[i]) continue;
        remap[i] = static_cast<int>(g.nodes.size());
        g.nodes.push_back(cand[i]);
    }
    for (const auto& e : edges)
        if (remap[e.from] >= 0 && remap[e.to] >= 0)
            g.edges.push_back({remap[e.from], remap[e.to], e.a, e.b});
    return g;
}

namespace {

// strongly connected components (iterative Tarjan), returned as node lists
std::vector<std::vector<int>> scc_decompose(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<int> idx(n, -1), low(n, 0), on(n, 0), st;
    std::vector<std::vector<int>> comps;
    int counter = 0;
    struct Frame { int node; size_t child; };
    for (int s = 0; s < n; ++s) {
        if (idx[s] >= 0) continue;
        std::vector<Frame> stack{{s, 0}};
        while (!stack.empty()) {
            auto& fr = stack.back();
            int u = fr.node;
            if (fr.child == 0) {
                idx[u] = low[u] = counter++;
                st.push_back(u);
                on[u] = 1;
            }
            if (fr.child < adj[u].size()) {
                int v = adj[u][fr.child++];
                if (idx[v] < 0) {
                    stack.push_back({v, 0});
                } else if (on[v]) {
                    low[u] = std::min(low[u], idx[v]);
                }
            } else {
                if (low[u] == idx[u]) {
                    std::vector<int> comp;
                    while (true) {
                        int v = st.back();
                        st.pop_back();
                        on[v] = 0;
                        comp.push_back(v);
                        if (v == u) break;
                    }
                    comps.push_back(std::move(comp));
                }
                stack.pop_back();
                if (!stack.empty())
                    low[stack.back().node] = std::min(low[stack.back().node], low[u]);
            }
        }
    }
    return comps;
}

// Collatz-Wielandt enclosure of the Perron root of a nonnegative integer
// matrix restricted to one strongly connected component.
QInterval cw_component(const std::vector<std::vector<Int>>& A, int steps) {
    size_t n = A.size();
    std::vector<Int> x(n, Int(1));
    for (int it = 0; it < steps; ++it) {
        std::vector<Int> y(n, Int(0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j)
                if (A[i][j] != 0) y[i] += A[i][j] * x[j];
            y[i] += x[i];  // (A + I) keeps the iterate positive and primitive
        }
        Int g = y[0];
        for (size_t i = 1; i < n; ++i) g = gcd(g, y[i]);
        if (g > 1)
            for (auto& v : y) v /= g;
        x = std::move(y);
    }
    Rat lo, hi;
    bool first = true;
    for (size_t i = 0; i < n; ++i) {
        Rat r(0);
        Int acc(0);
        for (size_t j = 0; j < n; ++j)
            if (A[i][j] != 0) acc += A[i][j] * x[j];
        r = Rat(acc) / Rat(x[i]);
        if (first) {
            lo = hi = r;
            first = false;
        } else {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }
    return {lo, hi};
}

QInterval spectral_radius_of_matrix(const std::vector<std::vector<Int>>& A, int steps) {
    size_t n = A.size();
    if (n == 0) return QInterval{Rat(0), Rat(0)};
    std::vector<std::vector<int>> adj(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (A[i][j] != 0) adj[i].push_back(static_cast<int>(j));
    auto comps = scc_decompose(static_cast<int>(n), adj);
    QInterval best{Rat(0), Rat(0)};
    for (const auto& comp : comps) {
        if (comp.size() == 1 && A[comp[0]][comp[0]] == 0) continue;  // no cycle
        std::vector<std::vector<Int>> sub(comp.size(), std::vector<Int>(comp.size()));
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = 0; j < comp.size(); ++j)
                sub[i][j] = A[comp[i]][comp[j]];
        QInterval r = cw_component(sub, steps);
        if (r.hi > best.hi) best.hi = r.hi;
        if (r.lo > best.lo) best.lo = r.lo;
    }
    if (best.lo > best.hi) best.lo = best.hi;
    return best;
}

}  // namespace

QInterval spectral_radius_enclosure(const BoundaryGraph& graph, int refine_steps) {
    if (graph.nodes.empty()) return QInterval{Rat(0), Rat(0)};
    return spectral_radius_of_matrix(graph.adjacency(), refine_steps);
}

TilingResult decide_tiling(const BetaField& field, const BoundaryGraph& graph,
                           int max_rounds) {
    QInterval beta = field.beta_interval();
    for (int round = 0; round < max_rounds; ++round) {
        int steps = 8 << std::min(round, 8);
        QInterval rho = graph.nodes.empty() ? QInterval{Rat(0), Rat(0)}
                                            : spectral_radius_enclosure(graph, steps);
        if (rho.hi < beta.lo) return {TilingVerdict::Tiling, rho, beta};
        if (rho.lo >= beta.hi) return {TilingVerdict::NotTiling, rho, beta};
        beta = refine_root(field.min_poly(), beta, beta.width() / 1024);
    }
    QInterval rho = spectral_radius_enclosure(graph, 8 << 8);
    return {TilingVerdict::Undecided, rho, beta};
}

BoundaryGraph pruned_quadratic_graph(const BetaField& field, const ParryData& parry,
                                     long a, long b) {
    if (field.degree() != 2) fail(ErrorCode::BadParameters, "quadratic base required");
    if (a < b || b < 1) fail(ErrorCode::BadParameters, "need a >= b >= 1");
    {
        // the construction is tied to beta^2 = a beta + b
        const IntPoly& p = field.min_poly();
        if (p[1] != -Int(a) || p[0] != -Int(b))
            fail(ErrorCode::BadParameters, "field does not match beta^2 = a*beta + b");
    }

    FieldElement beta = field.beta();
    FieldElement v = beta - Rat(a);          // beta - a = beta - floor(beta)
    FieldElement one = field.one();
    int iv = -1, i0 = -1;
    for (size_t i = 0; i < parry.V.size(); ++i) {
        if (parry.V[i].is_zero()) i0 = static_cast<int>(i);
        if (parry.V[i] == v) iv = static_cast<int>(i);
    }
    if (iv < 0 || i0 < 0) fail(ErrorCode::BadParameters, "V != {0, beta-a}?");

    BoundaryGraph g;
    g.parry = &parry;
    auto node = [&](int vv, const FieldElement& x, int ww) {
        int id = g.find_node(vv, x, ww);
        if (id < 0) {
            id = static_cast<int>(g.nodes.size());
            g.nodes.push_back({vv, x, ww});
        }
        return id;
    };
    auto edge = [&](int from, int to, long da, long db) {
        g.edges.push_back({from, to, static_cast<int>(da), static_cast<int>(db)});
    };

    FieldElement vm1 = v - Rat(1);   // v - 1
    FieldElement m1v = one - v;      // 1 - v
    if (2 * b <= a) {
        int n_v_vm1_0 = node(iv, vm1, i0);
        int n_0_1v_v = node(i0, m1v, iv);
        int n_0_v_v = node(i0, v, iv);
        int n_v_v_v = node(iv, v, iv);
        int n_v_mv_0 = node(iv, -v, i0);
        int n_v_mv_v = node(iv, -v, iv);
        for (long d = 0; d < b; ++d) edge(n_v_vm1_0, n_0_1v_v, d, d + a - b + 1);
        for (long d = a - b + 1; d <= a; ++d) edge(n_0_1v_v, n_v_vm1_0, d, d - a + b - 1);
        for (long d = 0; d < b; ++d) {
            edge(n_0_v_v, n_0_1v_v, d, d + a - b);
            edge(n_v_v_v, n_0_1v_v, d, d + a - b);
        }
        for (long d = a - b; d < a; ++d) {
            edge(n_v_mv_0, n_v_vm1_0, d, d - a + b);
            edge(n_v_mv_v, n_v_vm1_0, d, d - a + b);
        }
    } else {
        int n_v_vm1_0 = node(iv, vm1, i0);
        int n_0_vm1_0 = node(i0, vm1, i0);
        int n_0_1v_v = node(i0, m1v, iv);
        int n_0_1v_0 = node(i0, m1v, i0);
        int n_0_v_v = node(i0, v, iv);
        int n_v_mv_0 = node(iv, -v, i0);
        for (long d = 0; d + 2 <= 2 * b - a; ++d) {
            edge(n_v_vm1_0, n_0_1v_0, d, d + a - b + 1);
            edge(n_0_vm1_0, n_0_1v_0, d, d + a - b + 1);
        }
        for (long d = std::max(0L, 2 * b - a - 1); d < b; ++d) {
            edge(n_v_vm1_0, n_0_1v_v, d, d + a - b + 1);
            edge(n_0_vm1_0, n_0_1v_v, d, d + a - b + 1);
        }
        for (long d = a - b + 1; d < b; ++d) {
            edge(n_0_1v_v, n_0_vm1_0, d, d - a + b - 1);
            edge(n_0_1v_0, n_0_vm1_0, d, d - a + b - 1);
        }
        for (long d = b; d <= a; ++d) {
            edge(n_0_1v_v, n_v_vm1_0, d, d - a + b - 1);
            edge(n_0_1v_0, n_v_vm1_0, d, d - a + b - 1);
        }
        for (long d = 0; d < 2 * b - a; ++d) edge(n_0_v_v, n_0_1v_0, d, d + a - b);
        for (long d = 2 * b - a; d < b; ++d) edge(n_0_v_v, n_0_1v_v, d, d + a - b);
        for (long d = a - b; d < b; ++d) edge(n_v_mv_0, n_0_vm1_0, d, d - a + b);
        for (long d = b; d < a; ++d) edge(n_v_mv_0, n_v_vm1_0, d, d - a + b);
    }
    return g;
}

MergedGraph merge_by_middle(const BoundaryGraph& graph) {
    MergedGraph m;
    std::map<std::vector<Rat>, int> mid_index;
    std::vector<int> node_mid(graph.nodes.size());
    for (size_t i = 0; i < graph.nodes.size(); ++i) {
        auto key = graph.nodes[i].x.coeffs();
        auto it = mid_index.find(key);
        if (it == mid_index.end()) {
            it = mid_index.emplace(key, static_cast<int>(m.middles.size())).first;
            m.middles.push_back(graph.nodes[i].x);
        }
        node_mid[i] = it->second;
    }
    size_t k = m.middles.size();

    // outgoing (a, b, target middle) multiset per node; classes must agree
    std::vector<std::map<std::tuple<int, int, int>, int>> outs(graph.nodes.size());
    for (const auto& e : graph.edges)
        outs[e.from][{e.a, e.b, node_mid[e.to]}]++;
    std::vector<int> representative(k, -1);
    for (size_t i = 0; i < graph.nodes.size(); ++i) {
        int mid = node_mid[i];
        if (representative[mid] < 0) {
            representative[mid] = static_cast<int>(i);
        } else if (outs[i] != outs[representative[mid]]) {
            fail(ErrorCode::BadParameters,
                 "states with equal middle have inconsistent transitions; cannot merge");
        }
    }

    m.adjacency.assign(k, std::vector<Int>(k, Int(0)));
    for (size_t mid = 0; mid < k; ++mid) {
        if (representative[mid] < 0) continue;
        std::map<int, std::vector<std::pair<int, int>>> buckets;
        for (const auto& [key, count] : outs[representative[mid]]) {
            auto [a, b, tgt] = key;
            for (int c = 0; c < count; ++c) buckets[tgt].push_back({a, b});
        }
        for (auto& [tgt, lab] : buckets) {
            m.adjacency[mid][tgt] += static_cast<long>(lab.size());
            m.edges.push_back({static_cast<int>(mid), tgt, static_cast<int>(lab.size())});
            m.labels.push_back(lab);
        }
    }
    return m;
}

QInterval merged_spectral_radius(const MergedGraph& graph, int refine_steps) {
    return spectral_radius_of_matrix(graph.adjacency, refine_steps);
}

std::string export_dot(const BoundaryGraph& graph) {
    std::ostringstream os;
    os << "digraph boundary {\n";
    os << "  rankdir=LR;\n";
    for (size_t i = 0; i < graph.nodes.size(); ++i) {
        const BGNode& n = graph.nodes[i];
        os << "  n" << i << " [label=\"[" << graph.parry->V[n.v].to_string() << ", "
           << n.x.to_string() << ", " << graph.parry->V[n.w].to_string() << "]\"];\n";
    }
    std::vector<BGEdge> sorted = graph.edges;
    std::sort(sorted.begin(), sorted.end(), [](const BGEdge& a, const BGEdge& b) {
        return std::tie(a.from, a.to, a.a, a.b) < std::tie(b.from, b.to, b.a, b.b);
    });
    for (const auto& e : sorted)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"(" << e.a << "," << e.b
           << ")\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace betatile
