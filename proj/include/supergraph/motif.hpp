#pragma once

#include <functional>
#include <string>
#include <vector>

#include "supergraph/graph.hpp"

namespace supergraph {

struct ColoredMultigraph;  // graph_core.hpp

// Pattern graph F with cached structural quantities. Immutable after
// analyze_motif(); safe to share across threads.
struct Motif {
    int vertices = 0;                      // v_F
    std::vector<Edge> edges;               // sorted, 0-indexed, u < v
    long long edge_count = 0;              // e_F
    long long automorphism_count = 1;      // |Aut(F)|
    long long copies_in_complete = 1;      // a_F = v_F! / |Aut(F)|
    double max_subgraph_density = 0.0;     // m_F = max_{H, e_H>=1} e_H/v_H
    bool two_connected = false;
    bool balanced = false;
    int max_degree = 0;                    // Delta_F

    std::vector<std::vector<int>> adj;                  // adjacency of F itself
    std::vector<std::vector<int>> automorphisms;        // all vertex permutations preserving F
    std::vector<int> search_order;                      // connected vertex order for embedding

    bool is_clique() const {
        return edge_count == static_cast<long long>(vertices) * (vertices - 1) / 2;
    }
    bool is_cycle() const;
    bool has_edge(int u, int v) const;
    std::string name() const;  // "K5", "C4", or "F(v=..,e=..)"
};

// Builds a Motif from a simple graph on [0, vertices). Throws MalformedMotif
// on self-loops, duplicate edges, or out-of-range endpoints. Feasible v_F <= 10.
Motif analyze_motif(int vertices, const std::vector<Edge>& edges);

// Built-in names K3..K7 and C3..C9.
Motif motif_from_name(const std::string& name);

// Text format: first line v_F, then one "u v" line per edge, 1-indexed.
Motif motif_from_text(const std::string& text);

// Exact number of copies of F (distinct subgraphs: vertex set + edge subset)
// in the host. Cliques and cycles use dedicated kernels; general F uses
// embedding backtracking and refuses hosts above `host_budget` vertices when
// v_F >= 5 (HostTooLarge).
long long count_in_graph(const Motif& motif, const SimpleGraph& host,
                         long long host_budget = 10000);

// Visits every copy once. `vertices` is sorted; `edges` are host edges.
using CopyVisitor =
    std::function<void(const std::vector<int>& vertices, const std::vector<Edge>& edges)>;
void enumerate_copies(const Motif& motif, const SimpleGraph& host, const CopyVisitor& visit,
                      long long host_budget = 10000);

struct DensityFunctionals {
    double psi = 0.0;  // n^{v_F} p^{e_F}
    double phi = 0.0;  // min over subgraphs H with e_H >= 1 of n^{v_H} p^{e_H}
    double m_f = 0.0;
};

DensityFunctionals density_functionals(const Motif& motif, double n, double p);

struct ClusteringResult {
    double value = 0.0;
    bool defined = false;  // false when the host has no wedge; value is NaN then
};

// Global clustering coefficient: 3 * triangles / wedges.
ClusteringResult clustering_coefficient(const SimpleGraph& host);

// Per-realization counts for one motif on one supergraph.
struct CountReport {
    long long n_f = 0;        // copies in the flat graph
    long long mono = 0;       // monochromatic copies
    long long poly = 0;       // n_f - mono
    long long poly_star = 0;  // polychromatic colored copies in the multigraph
    long long s_tilde = 0;    // sum of per-layer counts
    std::vector<long long> per_layer;

    bool invariants_hold() const {
        if (n_f != mono + poly) return false;
        if (!(mono <= s_tilde && s_tilde <= mono + poly_star)) return false;
        long long diff = s_tilde - n_f;
        if (diff < 0) diff = -diff;
        return diff <= poly_star;
    }
};

// Counts copies in the flat graph, per layer, and the monochromatic /
// polychromatic split. Requires a 2-connected motif.
CountReport count_report(const Motif& motif, const ColoredMultigraph& g,
                         long long host_budget = 10000);

}  // namespace supergraph
