#include "supergraph/motif.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "supergraph/errors.hpp"
#include "supergraph/graph_core.hpp"

namespace supergraph {

namespace {

constexpr int kMaxMotifVertices = 10;

long long factorial(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

bool connected_subset(const std::vector<std::vector<int>>& adj, const std::vector<int>& verts) {
    if (verts.empty()) return true;
    std::vector<char> in(adj.size(), 0), seen(adj.size(), 0);
    for (int v : verts) in[v] = 1;
    std::vector<int> stack{verts[0]};
    seen[verts[0]] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[u]) {
            if (in[w] && !seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == verts.size();
}

void find_automorphisms(const Motif& m, std::vector<std::vector<int>>& out) {
    const int n = m.vertices;
    std::vector<int> perm(n, -1);
    std::vector<char> used(n, 0);
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(m.adj[v].size());

    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(perm);
            return;
        }
        for (int c = 0; c < n; ++c) {
            if (used[c] || degree[c] != degree[i]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (m.has_edge(i, j) != m.has_edge(c, perm[j])) ok = false;
            if (ok) {
                perm[i] = c;
                used[c] = 1;
                rec(i + 1);
                used[c] = 0;
                perm[i] = -1;
            }
        }
    };
    rec(0);
}

// Order vertices so each one (after the first) touches an earlier one when
// possible; maximizes pruning in the embedding search.
std::vector<int> make_search_order(const Motif& m) {
    const int n = m.vertices;
    std::vector<int> order;
    std::vector<char> placed(n, 0);
    auto degree = [&](int v) { return static_cast<int>(m.adj[v].size()); };
    while (static_cast<int>(order.size()) < n) {
        int best = -1, best_back = -1, best_deg = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            int back = 0;
            for (int w : m.adj[v]) back += placed[w];
            if (order.empty()) back = 0;
            if (back > best_back || (back == best_back && degree(v) > best_deg)) {
                best = v;
                best_back = back;
                best_deg = degree(v);
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    return order;
}

// ---- counting kernels -----------------------------------------------------

void enumerate_cliques(int k, const SimpleGraph& host, const CopyVisitor& visit) {
    std::vector<int> current;
    std::vector<int> cand_base;
    // candidates are always sorted and greater than the last clique vertex
    std::function<void(const std::vector<int>&)> rec = [&](const std::vector<int>& cands) {
        if (static_cast<int>(current.size()) == k) {
            std::vector<Edge> edges;
            edges.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
            for (std::size_t i = 0; i < current.size(); ++i)
                for (std::size_t j = i + 1; j < current.size(); ++j)
                    edges.push_back(make_edge(current[i], current[j]));
            visit(current, edges);
            return;
        }
        const int missing = k - static_cast<int>(current.size());
        for (std::size_t idx = 0; idx + missing <= cands.size(); ++idx) {
            const int v = cands[idx];
            std::vector<int> next;
            const auto& nb = host.adj[v];
            std::set_intersection(cands.begin() + static_cast<long>(idx) + 1, cands.end(),
                                  std::upper_bound(nb.begin(), nb.end(), v), nb.end(),
                                  std::back_inserter(next));
            current.push_back(v);
            rec(next);
            current.pop_back();
        }
    };
    std::vector<int> all(host.n);
    std::iota(all.begin(), all.end(), 0);
    rec(all);
}

void enumerate_cycles(int k, const SimpleGraph& host, const CopyVisitor& visit) {
    std::vector<int> path;
    std::vector<char> on_path(host.n, 0);
    // root is the smallest vertex of the cycle; orientation fixed by
    // path[1] < path[k-1].
    std::function<void(int)> rec = [&](int root) {
        const int v = path.back();
        if (static_cast<int>(path.size()) == k) {
            if (path[1] < path[k - 1] && host.has_edge(v, root)) {
                std::vector<int> verts = path;
                std::sort(verts.begin(), verts.end());
                std::vector<Edge> edges;
                edges.reserve(k);
                for (int i = 0; i + 1 < k; ++i) edges.push_back(make_edge(path[i], path[i + 1]));
                edges.push_back(make_edge(path[k - 1], root));
                visit(verts, edges);
            }
            return;
        }
        for (int w : host.adj[v]) {
            if (w <= root || on_path[w]) continue;
            on_path[w] = 1;
            path.push_back(w);
            rec(root);
            path.pop_back();
            on_path[w] = 0;
        }
    };
    for (int root = 0; root < host.n; ++root) {
        path.assign(1, root);
        std::fill(on_path.begin(), on_path.end(), 0);
        on_path[root] = 1;
        rec(root);
    }
}

struct EmbeddingSearch {
    const Motif& motif;
    const SimpleGraph& host;
    std::vector<int> image;          // F-vertex -> host vertex
    std::vector<char> used;          // host vertex taken
    long long embeddings = 0;
    const CopyVisitor* visit = nullptr;

    EmbeddingSearch(const Motif& m, const SimpleGraph& h)
        : motif(m), host(h), image(m.vertices, -1), used(h.n, 0) {}

    bool canonical() const {
        for (const auto& sigma : motif.automorphisms) {
            for (int i = 0; i < motif.vertices; ++i) {
                const int a = image[i], b = image[sigma[i]];
                if (a < b) break;
                if (a > b) return false;
            }
        }
        return true;
    }

    void emit() {
        ++embeddings;
        if (!visit) return;
        if (!canonical()) return;
        std::vector<int> verts = image;
        std::sort(verts.begin(), verts.end());
        std::vector<Edge> edges;
        edges.reserve(motif.edges.size());
        for (const auto& [a, b] : motif.edges) edges.push_back(make_edge(image[a], image[b]));
        (*visit)(verts, edges);
    }

    void run() {
        step(0);
    }

    void step(std::size_t depth) {
        if (depth == motif.search_order.size()) {
            emit();
            return;
        }
        const int fv = motif.search_order[depth];
        // pick the already-embedded F-neighbor with the smallest host degree
        int anchor = -1;
        for (int w : motif.adj[fv])
            if (image[w] >= 0 &&
                (anchor < 0 || host.degree(image[w]) < host.degree(image[anchor])))
                anchor = w;
        auto try_vertex = [&](int hv) {
            if (used[hv]) return;
            for (int w : motif.adj[fv]) {
                if (image[w] >= 0 && !host.has_edge(hv, image[w])) return;
            }
            if (host.degree(hv) < static_cast<int>(motif.adj[fv].size())) return;
            used[hv] = 1;
            image[fv] = hv;
            step(depth + 1);
            image[fv] = -1;
            used[hv] = 0;
        };
        if (anchor >= 0) {
            for (int hv : host.adj[image[anchor]]) try_vertex(hv);
        } else {
            for (int hv = 0; hv < host.n; ++hv) try_vertex(hv);
        }
    }
};

void guard_host_budget(const Motif& motif, const SimpleGraph& host, long long budget) {
    if (motif.vertices >= 5 && host.n > budget)
        throw HostTooLarge("general kernel: host has " + std::to_string(host.n) +
                           " vertices, budget " + std::to_string(budget));
}

}  // namespace

bool Motif::is_cycle() const {
    if (vertices < 3 || edge_count != vertices) return false;
    for (const auto& nb : adj)
        if (nb.size() != 2) return false;
    std::vector<int> all(vertices);
    std::iota(all.begin(), all.end(), 0);
    return connected_subset(adj, all);
}

bool Motif::has_edge(int u, int v) const {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

std::string Motif::name() const {
    if (is_clique() && vertices >= 2) return "K" + std::to_string(vertices);
    if (is_cycle()) return "C" + std::to_string(vertices);
    return "F(v=" + std::to_string(vertices) + ",e=" + std::to_string(edge_count) + ")";
}

Motif analyze_motif(int vertices, const std::vector<Edge>& edges) {
    if (vertices < 2 || vertices > kMaxMotifVertices)
        throw MalformedMotif("vertex count " + std::to_string(vertices) + " outside [2,10]");
    Motif m;
    m.vertices = vertices;
    m.adj.assign(vertices, {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertices || v >= vertices)
            throw MalformedMotif("edge endpoint out of range");
        if (u == v) throw MalformedMotif("self-loop");
        m.edges.push_back(make_edge(u, v));
    }
    std::sort(m.edges.begin(), m.edges.end());
    if (std::adjacent_find(m.edges.begin(), m.edges.end()) != m.edges.end())
        throw MalformedMotif("duplicate edge");
    for (const auto& [u, v] : m.edges) {
        m.adj[u].push_back(v);
        m.adj[v].push_back(u);
    }
    for (auto& nb : m.adj) std::sort(nb.begin(), nb.end());
    m.edge_count = static_cast<long long>(m.edges.size());
    for (const auto& nb : m.adj)
        m.max_degree = std::max(m.max_degree, static_cast<int>(nb.size()));

    find_automorphisms(m, m.automorphisms);
    m.automorphism_count = static_cast<long long>(m.automorphisms.size());
    m.copies_in_complete = factorial(vertices) / m.automorphism_count;

    // max subgraph density over vertex subsets (induced edge sets dominate)
    int best_e = 0, best_v = 1;
    bool dominated = true;
    for (unsigned mask = 1; mask < (1u << vertices); ++mask) {
        int nv = __builtin_popcount(mask), ne = 0;
        for (const auto& [u, v] : m.edges)
            if ((mask >> u & 1) && (mask >> v & 1)) ++ne;
        if (ne == 0) continue;
        if (static_cast<long long>(ne) * best_v > static_cast<long long>(best_e) * nv) {
            best_e = ne;
            best_v = nv;
        }
        if (static_cast<long long>(ne) * vertices > m.edge_count * nv) dominated = false;
    }
    m.max_subgraph_density = best_e > 0 ? static_cast<double>(best_e) / best_v : 0.0;
    m.balanced = m.edge_count >= 1 && dominated;

    // 2-connectivity: connected, and connected after deleting any one vertex
    std::vector<int> all(vertices);
    std::iota(all.begin(), all.end(), 0);
    m.two_connected = connected_subset(m.adj, all);
    if (m.two_connected && vertices >= 3) {
        for (int drop = 0; drop < vertices && m.two_connected; ++drop) {
            std::vector<int> rest;
            for (int v : all)
                if (v != drop) rest.push_back(v);
            if (!connected_subset(m.adj, rest)) m.two_connected = false;
        }
    }

    m.search_order = make_search_order(m);
    return m;
}

Motif motif_from_name(const std::string& name) {
    if (name.size() >= 2 && (name[0] == 'K' || name[0] == 'C')) {
        int k = 0;
        try {
            k = std::stoi(name.substr(1));
        } catch (...) {
            throw MalformedMotif("unknown motif name '" + name + "'");
        }
        std::vector<Edge> edges;
        if (name[0] == 'K' && k >= 3 && k <= 7) {
            for (int u = 0; u < k; ++u)
                for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
            return analyze_motif(k, edges);
        }
        if (name[0] == 'C' && k >= 3 && k <= 9) {
            for (int u = 0; u < k; ++u) edges.push_back(make_edge(u, (u + 1) % k));
            return analyze_motif(k, edges);
        }
    }
    throw MalformedMotif("unknown motif name '" + name + "' (built-ins: K3..K7, C3..C9)");
}

Motif motif_from_text(const std::string& text) {
    std::istringstream in(text);
    int v = 0;
    if (!(in >> v)) throw MalformedMotif("missing vertex count");
    std::vector<Edge> edges;
    int a, b;
    while (in >> a >> b) edges.push_back(make_edge(a - 1, b - 1));
    if (!in.eof()) throw MalformedMotif("trailing garbage in motif text");
    return analyze_motif(v, edges);
}

void enumerate_copies(const Motif& motif, const SimpleGraph& host, const CopyVisitor& visit,
                      long long host_budget) {
    if (host.n < motif.vertices) return;
    if (motif.is_clique()) {
        enumerate_cliques(motif.vertices, host, visit);
        return;
    }
    if (motif.is_cycle()) {
        enumerate_cycles(motif.vertices, host, visit);
        return;
    }
    guard_host_budget(motif, host, host_budget);
    EmbeddingSearch search(motif, host);
    search.visit = &visit;
    search.run();
}

long long count_in_graph(const Motif& motif, const SimpleGraph& host, long long host_budget) {
    if (host.n < motif.vertices) return 0;
    long long count = 0;
    if (motif.is_clique() || motif.is_cycle()) {
        enumerate_copies(motif, host, [&](const auto&, const auto&) { ++count; }, host_budget);
        return count;
    }
    guard_host_budget(motif, host, host_budget);
    EmbeddingSearch search(motif, host);
    search.run();
    assert(search.embeddings % motif.automorphism_count == 0);
    return search.embeddings / motif.automorphism_count;
}

DensityFunctionals density_functionals(const Motif& motif, double n, double p) {
    DensityFunctionals d;
    d.m_f = motif.max_subgraph_density;
    d.psi = std::pow(n, motif.vertices) * std::pow(p, static_cast<double>(motif.edge_count));
    double phi = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << motif.vertices); ++mask) {
        int nv = __builtin_popcount(mask), ne = 0;
        for (const auto& [u, v] : motif.edges)
            if ((mask >> u & 1) && (mask >> v & 1)) ++ne;
        if (ne == 0) continue;
        phi = std::min(phi, std::pow(n, nv) * std::pow(p, ne));
    }
    d.phi = phi;
    return d;
}

ClusteringResult clustering_coefficient(const SimpleGraph& host) {
    long long wedges = 0;
    for (int v = 0; v < host.n; ++v) {
        const long long d = host.degree(v);
        wedges += d * (d - 1) / 2;
    }
    if (wedges == 0)
        return {std::numeric_limits<double>::quiet_NaN(), false};
    long long triangles = 0;
    static const Motif k3 = motif_from_name("K3");
    triangles = count_in_graph(k3, host);
    return {3.0 * static_cast<double>(triangles) / static_cast<double>(wedges), true};
}

CountReport count_report(const Motif& motif, const ColoredMultigraph& g, long long host_budget) {
    if (!motif.two_connected) throw NotTwoConnected("count_report requires a 2-connected motif");
    CountReport report;
    report.per_layer.reserve(g.layers.size());
    for (const auto& layer : g.layers) {
        report.per_layer.push_back(count_in_graph(motif, layer.local_graph(), host_budget));
        report.s_tilde += report.per_layer.back();
    }

    enumerate_copies(motif, g.flat, [&](const std::vector<int>&, const std::vector<Edge>& edges) {
        ++report.n_f;
        unsigned long long assignments = 1;
        bool all_single = true;
        std::vector<int> common;
        bool first = true;
        for (const auto& [u, v] : edges) {
            const auto& colors = g.colors_of(u, v);
            const unsigned long long c = colors.size();
            if (c != 1) all_single = false;
            if (assignments > ULLONG_MAX / 2 / c)
                throw Error("poly_star count overflow");
            assignments *= c;
            if (first) {
                common = colors;
                first = false;
            } else {
                std::vector<int> merged;
                std::set_intersection(common.begin(), common.end(), colors.begin(), colors.end(),
                                      std::back_inserter(merged));
                common = std::move(merged);
            }
        }
        const long long monochrome_assignments = static_cast<long long>(common.size());
        if (all_single && monochrome_assignments == 1) ++report.mono;
        report.poly_star += static_cast<long long>(assignments) - monochrome_assignments;
    }, host_budget);

    report.poly = report.n_f - report.mono;
    return report;
}

}  // namespace supergraph
