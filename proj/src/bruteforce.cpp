#include "supergraph/bruteforce.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "supergraph/errors.hpp"

namespace supergraph::bruteforce {

namespace {

std::vector<Edge> map_edges(const std::vector<Edge>& edges, const std::vector<int>& image) {
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& [u, v] : edges) out.push_back(make_edge(image[u], image[v]));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::vector<Edge>> pattern_arrangements(int vertices,
                                                    const std::vector<Edge>& edges) {
    std::vector<int> perm(vertices);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::vector<Edge>> seen;
    do {
        seen.insert(map_edges(edges, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {seen.begin(), seen.end()};
}

std::vector<std::vector<Edge>> enumerate_copies(int vertices, const std::vector<Edge>& edges,
                                                const SimpleGraph& host) {
    std::vector<std::vector<Edge>> copies;
    if (host.n < vertices) return copies;
    const auto arrangements = pattern_arrangements(vertices, edges);

    std::vector<int> subset(vertices);
    std::function<void(int, int)> choose = [&](int start, int depth) {
        if (depth == vertices) {
            for (const auto& arr : arrangements) {
                bool present = true;
                for (const auto& [a, b] : arr)
                    if (!host.has_edge(subset[a], subset[b])) {
                        present = false;
                        break;
                    }
                if (present) {
                    std::vector<Edge> mapped;
                    mapped.reserve(arr.size());
                    for (const auto& [a, b] : arr)
                        mapped.push_back(make_edge(subset[a], subset[b]));
                    std::sort(mapped.begin(), mapped.end());
                    copies.push_back(std::move(mapped));
                }
            }
            return;
        }
        for (int v = start; v < host.n; ++v) {
            subset[depth] = v;
            choose(v + 1, depth + 1);
        }
    };
    choose(0, 0);
    return copies;
}

long long count_copies(int vertices, const std::vector<Edge>& edges, const SimpleGraph& host) {
    return static_cast<long long>(enumerate_copies(vertices, edges, host).size());
}

OracleReport count_report_oracle(int vertices, const std::vector<Edge>& edges,
                                 const ColoredMultigraph& g) {
    OracleReport report;

    // per-layer counts on local graphs
    for (const auto& layer : g.layers) {
        report.per_layer.push_back(count_copies(vertices, edges, layer.local_graph()));
        report.s_tilde += report.per_layer.back();
    }

    // flat graph rebuilt from the layers
    std::set<Edge> flat_edges;
    for (const auto& layer : g.layers)
        for (const auto& e : layer.edges) flat_edges.insert(e);
    SimpleGraph flat =
        SimpleGraph::from_edges(g.n, std::vector<Edge>(flat_edges.begin(), flat_edges.end()));

    const auto copies = enumerate_copies(vertices, edges, flat);
    report.n_f = static_cast<long long>(copies.size());

    for (const auto& copy : copies) {
        std::vector<std::vector<int>> colors(copy.size());
        for (std::size_t i = 0; i < copy.size(); ++i)
            for (const auto& layer : g.layers)
                if (std::find(layer.edges.begin(), layer.edges.end(), copy[i]) !=
                    layer.edges.end())
                    colors[i].push_back(layer.color);

        // explicit odometer over all per-edge color assignments
        std::vector<std::size_t> pick(copy.size(), 0);
        long long poly_assignments = 0;
        bool carry = false;
        while (!carry) {
            std::set<int> used;
            for (std::size_t i = 0; i < copy.size(); ++i) used.insert(colors[i][pick[i]]);
            if (used.size() >= 2) ++poly_assignments;
            std::size_t pos = 0;
            for (;;) {
                if (pos == copy.size()) {
                    carry = true;
                    break;
                }
                if (++pick[pos] < colors[pos].size()) break;
                pick[pos] = 0;
                ++pos;
            }
        }
        report.poly_star += poly_assignments;

        bool all_single = true;
        for (const auto& c : colors)
            if (c.size() != 1) all_single = false;
        if (all_single) {
            bool same = true;
            for (const auto& c : colors)
                if (c[0] != colors[0][0]) same = false;
            if (same) ++report.mono;
        }
    }
    report.poly = report.n_f - report.mono;
    return report;
}

long long min_vertices_with_edges(long long b) {
    if (b < 1) throw ConfigInvalid("min_vertices_with_edges needs b >= 1");
    if (b > 15) throw KOutOfBudget("exhaustive b* search budgeted to b <= 15");
    for (int v = 2;; ++v) {
        // all C(v,2)-choose-b edge subsets; succeed if one touches all v vertices
        std::vector<Edge> slots;
        for (int i = 0; i < v; ++i)
            for (int j = i + 1; j < v; ++j) slots.emplace_back(i, j);
        if (static_cast<long long>(slots.size()) < b) continue;

        std::vector<int> pick(b);
        std::function<bool(int, int)> choose = [&](int start, int depth) -> bool {
            if (depth == b) {
                std::vector<char> touched(v, 0);
                for (int idx : pick) {
                    touched[slots[idx].first] = 1;
                    touched[slots[idx].second] = 1;
                }
                for (int i = 0; i < v; ++i)
                    if (!touched[i]) return false;
                return true;
            }
            for (int i = start; i < static_cast<int>(slots.size()); ++i) {
                pick[depth] = i;
                if (choose(i + 1, depth + 1)) return true;
            }
            return false;
        };
        if (choose(0, 0)) return v;
    }
}

}  // namespace supergraph::bruteforce
