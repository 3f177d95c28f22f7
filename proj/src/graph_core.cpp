#include "supergraph/graph_core.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "supergraph/errors.hpp"

namespace supergraph {

namespace {

// Partial Fisher-Yates over a reusable identity pool. Swaps are undone after
// extraction so consecutive layers pay O(k), not O(n).
class SubsetSampler {
public:
    explicit SubsetSampler(int n) : pool_(n) { std::iota(pool_.begin(), pool_.end(), 0); }

    std::vector<int> draw(int k, RandomSource& rng) {
        const int n = static_cast<int>(pool_.size());
        swaps_.clear();
        for (int i = 0; i < k; ++i) {
            const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool_[i], pool_[j]);
            swaps_.emplace_back(i, j);
        }
        std::vector<int> out(pool_.begin(), pool_.begin() + k);
        for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it)
            std::swap(pool_[it->first], pool_[it->second]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<int> pool_;
    std::vector<std::pair<int, int>> swaps_;
};

std::pair<int, int> unrank_pair(long long idx, int k) {
    // lexicographic rank over pairs (i,j), i < j < k
    int i = 0;
    long long row = k - 1;
    while (idx >= row) {
        idx -= row;
        ++i;
        --row;
    }
    return {i, i + 1 + static_cast<int>(idx)};
}

void fill_edges(LayerRealization& layer, double q, RandomSource& rng) {
    const int k = static_cast<int>(layer.vertex_set.size());
    if (k < 2 || q <= 0.0) return;
    const long long pairs = static_cast<long long>(k) * (k - 1) / 2;
    if (q >= 1.0) {
        layer.edges.reserve(pairs);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                layer.edges.emplace_back(layer.vertex_set[i], layer.vertex_set[j]);
        return;
    }
    if (q < 0.25) {
        // geometric skipping over the pair sequence
        std::uint64_t skip = rng.geometric_skip(q);
        long long idx = 0;
        while (skip < static_cast<std::uint64_t>(pairs - idx)) {
            idx += static_cast<long long>(skip);
            const auto [i, j] = unrank_pair(idx, k);
            layer.edges.emplace_back(layer.vertex_set[i], layer.vertex_set[j]);
            ++idx;
            skip = rng.geometric_skip(q);
        }
    } else {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (rng.bernoulli(q))
                    layer.edges.emplace_back(layer.vertex_set[i], layer.vertex_set[j]);
    }
}

LayerRealization make_layer(int n, int color, long long x, double q, RandomSource& rng,
                            SubsetSampler& sampler) {
    LayerRealization layer;
    layer.color = color;
    layer.x_drawn = x;
    layer.q_drawn = q;
    const int k = static_cast<int>(std::min<long long>(x, n));
    if (k == n) {
        layer.vertex_set.resize(n);
        std::iota(layer.vertex_set.begin(), layer.vertex_set.end(), 0);
    } else if (k > 0) {
        layer.vertex_set = sampler.draw(k, rng);
    }
    fill_edges(layer, q, rng);
    return layer;
}

}  // namespace

SimpleGraph LayerRealization::local_graph() const {
    SimpleGraph g(static_cast<int>(vertex_set.size()));
    for (const auto& [u, v] : edges) {
        const int lu = static_cast<int>(
            std::lower_bound(vertex_set.begin(), vertex_set.end(), u) - vertex_set.begin());
        const int lv = static_cast<int>(
            std::lower_bound(vertex_set.begin(), vertex_set.end(), v) - vertex_set.begin());
        g.adj[lu].push_back(lv);
        g.adj[lv].push_back(lu);
    }
    g.sort_adjacency();
    return g;
}

const std::vector<int>& ColoredMultigraph::colors_of(int u, int v) const {
    static const std::vector<int> empty;
    const auto it = edge_colors.find(edge_key(u, v));
    return it == edge_colors.end() ? empty : it->second;
}

long long ColoredMultigraph::parallel_edge_count() const {
    long long total = 0;
    for (const auto& layer : layers) total += static_cast<long long>(layer.edges.size());
    return total;
}

bool ColoredMultigraph::invariants_hold() const {
    long long color_total = 0;
    for (const auto& [key, colors] : edge_colors) {
        if (colors.empty()) return false;
        const int u = static_cast<int>(key >> 32);
        const int v = static_cast<int>(key & 0xffffffffu);
        if (!flat.has_edge(u, v)) return false;
        color_total += static_cast<long long>(colors.size());
    }
    if (color_total != parallel_edge_count()) return false;
    if (flat.edge_count() != static_cast<long long>(edge_colors.size())) return false;
    for (const auto& layer : layers) {
        if (static_cast<long long>(layer.vertex_set.size()) !=
            std::min<long long>(layer.x_drawn, n))
            return false;
        for (const auto& [u, v] : layer.edges) {
            if (u == v) return false;
            if (!std::binary_search(layer.vertex_set.begin(), layer.vertex_set.end(), u) ||
                !std::binary_search(layer.vertex_set.begin(), layer.vertex_set.end(), v))
                return false;
        }
    }
    return true;
}

LayerRealization generate_layer(int n, int color, long long x, double q, RandomSource& rng) {
    if (n < 1) throw ConfigInvalid("generate_layer needs n >= 1");
    if (x < 0 || !(q >= 0.0 && q <= 1.0))
        throw ConfigInvalid("generate_layer needs x >= 0 and q in [0,1]");
    SubsetSampler sampler(n);
    return make_layer(n, color, x, q, rng, sampler);
}

ColoredMultigraph generate_supergraph(int n, int m, const LayerTypeLaw& law,
                                      RandomSource& rng) {
    if (n < 1 || m < 1) throw ConfigInvalid("generate_supergraph needs n, m >= 1");
    ColoredMultigraph g;
    g.n = n;
    g.layers.reserve(m);
    SubsetSampler sampler(n);
    for (int i = 0; i < m; ++i) {
        const auto [x, q] = sample_layer_type(law, rng);
        g.layers.push_back(make_layer(n, i, x, q, rng, sampler));
    }
    for (const auto& layer : g.layers)
        for (const auto& [u, v] : layer.edges) g.edge_colors[edge_key(u, v)].push_back(layer.color);
    g.flat = SimpleGraph(n);
    for (const auto& [key, colors] : g.edge_colors) {
        const int u = static_cast<int>(key >> 32);
        const int v = static_cast<int>(key & 0xffffffffu);
        g.flat.adj[u].push_back(v);
        g.flat.adj[v].push_back(u);
    }
    g.flat.sort_adjacency();
    return g;
}

int max_layer_overflow(const ColoredMultigraph& g) {
    int count = 0;
    for (const auto& layer : g.layers)
        if (layer.x_drawn > g.n) ++count;
    return count;
}

std::string dump_supergraph(const ColoredMultigraph& g) {
    std::string out;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d %zu %llu\n", g.n, g.layers.size(),
                  static_cast<unsigned long long>(g.seed));
    out += buf;
    for (const auto& layer : g.layers) {
        std::snprintf(buf, sizeof(buf), "layer %d %lld %.17g\n", layer.color + 1, layer.x_drawn,
                      layer.q_drawn);
        out += buf;
        out += "v";
        for (int v : layer.vertex_set) {
            std::snprintf(buf, sizeof(buf), " %d", v + 1);
            out += buf;
        }
        out += "\n";
        for (const auto& [u, v] : layer.edges) {
            std::snprintf(buf, sizeof(buf), "e %d %d\n", u + 1, v + 1);
            out += buf;
        }
    }
    return out;
}

}  // namespace supergraph
