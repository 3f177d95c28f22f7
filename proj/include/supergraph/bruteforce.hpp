#pragma once

#include <vector>

#include "supergraph/graph.hpp"
#include "supergraph/graph_core.hpp"

namespace supergraph::bruteforce {

// Everything here is an independent slow path used for verification. It
// shares no code with the counting kernels: copies come from permutation
// enumeration over vertex subsets, colors are read straight off the layers.

// Distinct copies of the pattern inside the complete graph on its own
// vertex set, as canonical sorted edge lists. Size of the result is a_F.
std::vector<std::vector<Edge>> pattern_arrangements(int vertices,
                                                    const std::vector<Edge>& edges);

// All copies of the pattern in the host, one canonical edge list per copy.
std::vector<std::vector<Edge>> enumerate_copies(int vertices, const std::vector<Edge>& edges,
                                                const SimpleGraph& host);

long long count_copies(int vertices, const std::vector<Edge>& edges, const SimpleGraph& host);

struct OracleReport {
    long long n_f = 0;
    long long mono = 0;
    long long poly = 0;
    long long poly_star = 0;
    long long s_tilde = 0;
    std::vector<long long> per_layer;
};

// CountReport recomputed from the layers alone: the flat graph is rebuilt
// from layer edge unions and colorings are enumerated explicitly.
OracleReport count_report_oracle(int vertices, const std::vector<Edge>& edges,
                                 const ColoredMultigraph& g);

// Minimal vertex count over all graphs with exactly b edges, by exhaustive
// search over edge subsets. Feasible for b <= 15.
long long min_vertices_with_edges(long long b);

}  // namespace supergraph::bruteforce
