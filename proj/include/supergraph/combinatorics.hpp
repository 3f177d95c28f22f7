#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "supergraph/graph.hpp"
#include "supergraph/layer_model.hpp"
#include "supergraph/motif.hpp"

namespace supergraph {

// b -> b*: minimal vertex count of a graph with b edges, with the extremal
// graph H_b (clique K_{k_b} plus a star into it when delta_b > 0).
struct BStar {
    long long b = 0;
    long long k_b = 0;      // largest k with C(k,2) <= b
    long long delta_b = 0;  // b - C(k_b,2)
    long long b_star = 0;   // k_b, or k_b + 1 when delta_b > 0
    std::vector<Edge> h_b;  // extremal graph on vertices 0..b_star-1
};

BStar b_star(long long b);

struct SuperadditivityCounterexample {
    long long s = 0, t = 0;
};

// Checks s* + t* >= (s+t-1)* + 2 for all 1 <= t <= s <= s_max.
std::vector<SuperadditivityCounterexample> verify_superadditivity(long long s_max);

// One edge-set partition with per-block statistics.
struct EdgePartition {
    int r = 0;  // number of blocks
    std::vector<std::vector<int>> blocks;  // edge indices into motif.edges
    std::vector<int> block_sizes;          // b_j
    std::vector<int> block_vertices;       // v_j
    std::vector<int> block_components;     // rho_j
};

// Streams every partition of the motif's edge set with r >= 2 blocks (r <=
// r_max if given) in canonical restricted-growth order. e_F <= 12.
void enumerate_partitions(const Motif& motif, std::optional<int> r_max,
                          const std::function<void(const EdgePartition&)>& visit);

std::vector<EdgePartition> collect_partitions(const Motif& motif,
                                              std::optional<int> r_max = std::nullopt);

struct CliquePartitionCounterexample {
    std::vector<int> block_sizes;
    long long lhs = 0, mid = 0, rhs = 0;
};

// Exhaustively checks b_1*+...+b_r* >= (kappa-(r-1))* + 2(r-1) >= k+r over all
// edge partitions of K_k with r >= 2. Budgeted to 3 <= k <= 5.
std::vector<CliquePartitionCounterexample> verify_clique_partition_bound(int k);

// Exact expected number of polychromatic colored copies over one fixed flat
// copy: sum over partitions of (m)_r * prod_j E[(min{X,n})_{v_j} Q^{b_j}] / (n)_{v_j}.
double h_f_exact(const Motif& motif, long long n, long long m, const LayerTypeLaw& law);

}  // namespace supergraph
