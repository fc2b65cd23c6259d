#pragma once

#include "betatile/dynamics.hpp"

namespace betatile {

// Node of the boundary graph: a triple [v, x, w] with v, w in V and
// x in Z[beta] \ {0} satisfying w - v_hat < x < w_hat - v.
struct BGNode {
    int v;           // index into parry.V
    FieldElement x;  // the middle component
    int w;
};

struct BGEdge {
    int from, to;
    int a, b;  // digit labels
};

struct BoundaryGraph {
    const ParryData* parry;
    std::vector<BGNode> nodes;  // deterministic order (sorted by (v, x, w))
    std::vector<BGEdge> edges;

    // adjacency with multiplicities (number of labels between node pairs)
    std::vector<std::vector<Int>> adjacency() const;
    int find_node(int v, const FieldElement& x, int w) const;
    size_t out_degree(int node) const;
};

// All triples passing the inequality and conjugate-box tests; the lattice
// scan is deliberately over-inclusive, pruning decides true membership.
std::vector<BGNode> candidate_nodes(const ParryData& parry, long cap = 1000000);

// Exact boundary graph: edges by the transition rule among candidates, then
// nodes without outgoing edges removed to a fixpoint.
BoundaryGraph build_boundary_graph(const ParryData& parry, long cap = 1000000);

// Rigorous spectral radius enclosure via Collatz-Wielandt bounds per
// strongly connected component, tightened by rational power iterations.
QInterval spectral_radius_enclosure(const BoundaryGraph& graph, int refine_steps);

enum class TilingVerdict { Tiling, NotTiling, Undecided };

struct TilingResult {
    TilingVerdict verdict;
    QInterval rho;        // spectral radius enclosure at the final refinement
    QInterval beta;       // dominant root enclosure used for the comparison
};

// Tiling iff rho < beta (certified); refines both enclosures until decisive
// or the cap is reached.
TilingResult decide_tiling(const BetaField& field, const BoundaryGraph& graph,
                           int max_rounds = 12);

// The explicit pruned boundary graph of a quadratic base beta^2 = a beta + b,
// a >= b >= 1: nodes with middle in +-{beta-a, a+1-beta} and the literal
// transition lists.
BoundaryGraph pruned_quadratic_graph(const BetaField& field, const ParryData& parry,
                                     long a, long b);

// Merge states with equal middle component; fails if members of a class have
// inconsistent outgoing (label, target-middle) multisets.
struct MergedGraph {
    std::vector<FieldElement> middles;      // sorted
    std::vector<std::array<int, 3>> edges;  // (from, to, count of parallel edges) per label-run
    std::vector<std::vector<Int>> adjacency;
    std::vector<std::vector<std::pair<int, int>>> labels;  // per edge-run: (a,b) list
};
MergedGraph merge_by_middle(const BoundaryGraph& graph);

QInterval merged_spectral_radius(const MergedGraph& graph, int refine_steps);

// Graphviz text with deterministic ordering.
std::string export_dot(const BoundaryGraph& graph);

}  // namespace betatile
