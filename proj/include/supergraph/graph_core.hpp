#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "supergraph/graph.hpp"
#include "supergraph/layer_model.hpp"
#include "supergraph/rng.hpp"

namespace supergraph {

// One layer G(min{X,n}, Q) embedded on a random vertex subset of [n].
struct LayerRealization {
    int color = 0;                 // 0-indexed internally, 1-indexed in dumps
    std::vector<int> vertex_set;   // sorted, size min{x_drawn, n}
    std::vector<Edge> edges;       // global vertex ids, u < v
    long long x_drawn = 0;         // untruncated X
    double q_drawn = 0.0;

    // The layer as a standalone graph on local indices 0..|vertex_set|-1.
    SimpleGraph local_graph() const;
};

// Superposition of m layers: flat simple graph plus per-edge color sets.
struct ColoredMultigraph {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<LayerRealization> layers;
    SimpleGraph flat;
    std::unordered_map<std::uint64_t, std::vector<int>> edge_colors;  // sorted color lists

    const std::vector<int>& colors_of(int u, int v) const;
    long long parallel_edge_count() const;  // sum over layers of |edges|
    bool invariants_hold() const;
};

// Uniform random min{x,n}-subset of [n], then Bernoulli(q) on each pair.
LayerRealization generate_layer(int n, int color, long long x, double q, RandomSource& rng);

// m independent layers drawn from the law; flat graph and color map filled in.
ColoredMultigraph generate_supergraph(int n, int m, const LayerTypeLaw& law,
                                      RandomSource& rng);

// Number of layers whose drawn X exceeded n (the truncation event).
int max_layer_overflow(const ColoredMultigraph& g);

// Line-oriented text dump; vertices 1-indexed, reals with 17 significant
// digits. Stable across reruns with the same seed.
std::string dump_supergraph(const ColoredMultigraph& g);

}  // namespace supergraph
