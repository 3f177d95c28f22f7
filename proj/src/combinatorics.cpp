#include "supergraph/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "supergraph/errors.hpp"

namespace supergraph {

namespace {

long long binom2(long long k) { return k * (k - 1) / 2; }

// per-block vertex and component counts for one edge block
void block_stats(const Motif& motif, const std::vector<int>& edge_ids, int& v_count,
                 int& components) {
    std::vector<int> verts;
    for (int e : edge_ids) {
        verts.push_back(motif.edges[e].first);
        verts.push_back(motif.edges[e].second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    v_count = static_cast<int>(verts.size());

    // union-find over the block's vertices
    std::vector<int> parent(verts.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto local = [&](int v) {
        return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    components = v_count;
    for (int e : edge_ids) {
        const int a = find(local(motif.edges[e].first));
        const int b = find(local(motif.edges[e].second));
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
}

}  // namespace

BStar b_star(long long b) {
    if (b < 1) throw ConfigInvalid("b_star needs b >= 1");
    BStar r;
    r.b = b;
    long long k = 2;
    while (binom2(k + 1) <= b) ++k;
    r.k_b = k;
    r.delta_b = b - binom2(k);
    r.b_star = r.delta_b == 0 ? k : k + 1;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) r.h_b.emplace_back(u, v);
    // star center is the extra vertex; its leaves sit inside the clique
    for (int leaf = 0; leaf < r.delta_b; ++leaf)
        r.h_b.push_back(make_edge(leaf, static_cast<int>(k)));
    return r;
}

std::vector<SuperadditivityCounterexample> verify_superadditivity(long long s_max) {
    if (s_max < 2) throw ConfigInvalid("verify_superadditivity needs s_max >= 2");
    std::vector<SuperadditivityCounterexample> bad;
    for (long long s = 1; s <= s_max; ++s)
        for (long long t = 1; t <= s; ++t)
            if (b_star(s).b_star + b_star(t).b_star < b_star(s + t - 1).b_star + 2)
                bad.push_back({s, t});
    return bad;
}

void enumerate_partitions(const Motif& motif, std::optional<int> r_max,
                          const std::function<void(const EdgePartition&)>& visit) {
    const int e = static_cast<int>(motif.edge_count);
    if (e > 12) throw TooManyEdges("partition enumeration budgeted to e_F <= 12");
    if (e < 2) return;

    // restricted growth strings: assignment[i] <= 1 + max(assignment[0..i-1])
    std::vector<int> assign(e, 0);
    EdgePartition part;
    std::function<void(int, int)> rec = [&](int i, int max_used) {
        if (i == e) {
            const int r = max_used + 1;
            if (r < 2) return;
            if (r_max && r > *r_max) return;
            part.r = r;
            part.blocks.assign(r, {});
            for (int j = 0; j < e; ++j) part.blocks[assign[j]].push_back(j);
            part.block_sizes.clear();
            part.block_vertices.clear();
            part.block_components.clear();
            for (const auto& blk : part.blocks) {
                int v = 0, rho = 0;
                block_stats(motif, blk, v, rho);
                part.block_sizes.push_back(static_cast<int>(blk.size()));
                part.block_vertices.push_back(v);
                part.block_components.push_back(rho);
            }
            visit(part);
            return;
        }
        for (int c = 0; c <= max_used + 1 && c < e; ++c) {
            assign[i] = c;
            rec(i + 1, std::max(max_used, c));
        }
    };
    assign[0] = 0;
    rec(1, 0);
}

std::vector<EdgePartition> collect_partitions(const Motif& motif, std::optional<int> r_max) {
    std::vector<EdgePartition> out;
    enumerate_partitions(motif, r_max, [&](const EdgePartition& p) { out.push_back(p); });
    return out;
}

std::vector<CliquePartitionCounterexample> verify_clique_partition_bound(int k) {
    if (k < 3 || k > 5) throw KOutOfBudget("clique partition check budgeted to 3 <= k <= 5");
    Motif clique = motif_from_name("K" + std::to_string(k));
    const long long kappa = binom2(k);
    std::vector<CliquePartitionCounterexample> bad;
    enumerate_partitions(clique, std::nullopt, [&](const EdgePartition& p) {
        long long lhs = 0;
        for (int b : p.block_sizes) lhs += b_star(b).b_star;
        const long long mid = b_star(kappa - (p.r - 1)).b_star + 2LL * (p.r - 1);
        const long long rhs = k + p.r;
        if (!(lhs >= mid && mid >= rhs)) {
            CliquePartitionCounterexample c;
            c.block_sizes = p.block_sizes;
            c.lhs = lhs;
            c.mid = mid;
            c.rhs = rhs;
            bad.push_back(std::move(c));
        }
    });
    return bad;
}

double h_f_exact(const Motif& motif, long long n, long long m, const LayerTypeLaw& law) {
    if (motif.edge_count > 12) throw TooManyEdges("h_f_exact budgeted to e_F <= 12");
    if (n < 1 || m < 1) throw ConfigInvalid("h_f_exact needs n, m >= 1");

    // E[(min{X,n})_v Q^b] / (n)_v, memoized over the few (v, b) pairs
    std::map<std::pair<int, int>, double> factor_cache;
    auto block_factor = [&](int v, int b) {
        const auto key = std::make_pair(v, b);
        const auto it = factor_cache.find(key);
        if (it != factor_cache.end()) return it->second;
        double falling_n = 1.0;
        for (int i = 0; i < v; ++i) falling_n *= static_cast<double>(n - i);
        const double moment = factorial_moment(law, v, static_cast<double>(b), n);
        const double value = moment / falling_n;
        factor_cache.emplace(key, value);
        return value;
    };

    double total = 0.0;
    enumerate_partitions(motif, std::nullopt, [&](const EdgePartition& p) {
        if (p.r > m) return;  // (m)_r = 0
        double colorings = 1.0;
        for (int i = 0; i < p.r; ++i) colorings *= static_cast<double>(m - i);
        double product = colorings;
        for (int j = 0; j < p.r; ++j)
            product *= block_factor(p.block_vertices[j], p.block_sizes[j]);
        total += product;
    });
    return total;
}

}  // namespace supergraph
