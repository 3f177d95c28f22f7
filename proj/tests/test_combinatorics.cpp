#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "supergraph/bruteforce.hpp"
#include "supergraph/combinatorics.hpp"
#include "supergraph/errors.hpp"

using namespace supergraph;

TEST_SUITE("combinatorics") {

TEST_CASE("b_star closed form on the spec anchors") {
    const BStar b1 = b_star(1);
    CHECK(b1.k_b == 2);
    CHECK(b1.delta_b == 0);
    CHECK(b1.b_star == 2);

    const BStar b6 = b_star(6);
    CHECK(b6.k_b == 4);
    CHECK(b6.delta_b == 0);
    CHECK(b6.b_star == 4);
    CHECK(b6.h_b.size() == 6);  // K4

    const BStar b7 = b_star(7);
    CHECK(b7.k_b == 4);
    CHECK(b7.delta_b == 1);
    CHECK(b7.b_star == 5);
}

TEST_CASE("extremal graph has b edges on exactly b_star vertices, up to b = 200") {
    for (long long b = 1; b <= 200; ++b) {
        const BStar bs = b_star(b);
        CHECK(static_cast<long long>(bs.h_b.size()) == b);
        std::set<int> verts;
        for (const auto& [u, v] : bs.h_b) {
            verts.insert(u);
            verts.insert(v);
        }
        CHECK(static_cast<long long>(verts.size()) == bs.b_star);
        CHECK(bs.b == (bs.k_b * (bs.k_b - 1)) / 2 + bs.delta_b);
        // no duplicate edges
        std::set<Edge> edges(bs.h_b.begin(), bs.h_b.end());
        CHECK(edges.size() == bs.h_b.size());
    }
}

TEST_CASE("b_star minimality against exhaustive search for b <= 15") {
    for (long long b = 1; b <= 15; ++b) {
        CAPTURE(b);
        CHECK(b_star(b).b_star == bruteforce::min_vertices_with_edges(b));
    }
}

TEST_CASE("superadditivity holds with equality cases") {
    // s = t = 1: both sides 4
    CHECK(b_star(1).b_star + b_star(1).b_star == b_star(1).b_star + 2);
    // s = t = 2: 3 + 3 >= 3 + 2
    CHECK(b_star(2).b_star + b_star(2).b_star == 6);
    CHECK(b_star(3).b_star + 2 == 5);
    CHECK(verify_superadditivity(40).empty());
}

TEST_CASE("partition enumeration counts Bell(e) - 1 and keeps blocks disjoint") {
    const Motif k3 = motif_from_name("K3");
    const auto parts3 = collect_partitions(k3);
    CHECK(parts3.size() == 4);  // Bell(3) - 1

    int r2 = 0, r3 = 0;
    for (const auto& p : parts3) {
        if (p.r == 2) ++r2;
        if (p.r == 3) ++r3;
        std::set<int> all;
        std::size_t total = 0;
        for (const auto& blk : p.blocks) {
            CHECK_FALSE(blk.empty());
            all.insert(blk.begin(), blk.end());
            total += blk.size();
        }
        CHECK(all.size() == 3);
        CHECK(total == 3);
    }
    CHECK(r2 == 3);
    CHECK(r3 == 1);

    const auto parts_c4 = collect_partitions(motif_from_name("C4"));
    CHECK(parts_c4.size() == 14);  // Bell(4) - 1
    const auto parts_k4 = collect_partitions(motif_from_name("K4"));
    CHECK(parts_k4.size() == 202);  // Bell(6) - 1

    // r_max restricts the stream
    const auto parts_r2 = collect_partitions(motif_from_name("K4"), 2);
    for (const auto& p : parts_r2) CHECK(p.r == 2);
    CHECK(parts_r2.size() == 31);  // Stirling2(6,2)

    // a single edge admits no r >= 2 partition
    const Motif edge = analyze_motif(2, {{0, 1}});
    CHECK(collect_partitions(edge).empty());
}

TEST_CASE("partition enumeration refuses e_F > 12") {
    // K6 has 15 edges
    CHECK_THROWS_AS(collect_partitions(motif_from_name("K6")), TooManyEdges);
}

TEST_CASE("vertex-sum inequality holds for every partition of 2-connected motifs") {
    for (const auto& name : {"K3", "K4", "C4", "C5", "K5"}) {
        const Motif m = motif_from_name(name);
        enumerate_partitions(m, std::nullopt, [&](const EdgePartition& p) {
            int v_sum = 0, rho_sum = 0;
            for (int j = 0; j < p.r; ++j) {
                v_sum += p.block_vertices[j];
                rho_sum += p.block_components[j];
                // any graph with v_j vertices and rho_j components has >= v_j - rho_j edges
                CHECK(p.block_sizes[j] >= p.block_vertices[j] - p.block_components[j]);
            }
            CHECK(v_sum >= m.vertices + rho_sum);
        });
    }
}

TEST_CASE("clique partition bound: equality at the all-singleton partition of K3") {
    // three singleton blocks: each b* = 2, lhs = 6; mid = (3-2)* + 4 = 6; rhs = 6
    CHECK(b_star(1).b_star * 3 == 6);
    CHECK(b_star(1).b_star + 2 * 2 == 6);
    CHECK(verify_clique_partition_bound(3).empty());
    CHECK(verify_clique_partition_bound(4).empty());
    CHECK_THROWS_AS(verify_clique_partition_bound(6), KOutOfBudget);
    CHECK_THROWS_AS(verify_clique_partition_bound(2), KOutOfBudget);
}

TEST_CASE("h_f_exact: degenerate inputs") {
    const Motif k3 = motif_from_name("K3");
    CHECK(h_f_exact(k3, 8, 1, LayerTypeLaw::deterministic(4, 0.7)) == doctest::Approx(0.0));
    CHECK(h_f_exact(k3, 8, 4, LayerTypeLaw::deterministic(4, 0.0)) == doctest::Approx(0.0));
}

TEST_CASE("h_f_exact matches the hand-evaluated partition sum for K3") {
    // X=4, Q=0.7, n=8, m=4. Partitions of K3's edges with r >= 2:
    //   3 of shape {2 edges}+{1 edge}: (m)_2 * [E(X)_3 Q^2 /(n)_3] * [E(X)_2 Q /(n)_2]
    //   1 all-singleton:               (m)_3 * [E(X)_2 Q /(n)_2]^3
    const double pair_factor = (12.0 * 0.7) / 56.0;        // E(X)_2 Q / (8)_2
    const double triple_factor = (24.0 * 0.49) / 336.0;    // E(X)_3 Q^2 / (8)_3
    const double expected = 12.0 * 3.0 * triple_factor * pair_factor +
                            24.0 * pair_factor * pair_factor * pair_factor;
    CHECK(expected == doctest::Approx(0.27));
    const double ours = h_f_exact(motif_from_name("K3"), 8, 4, LayerTypeLaw::deterministic(4, 0.7));
    CHECK(ours == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("h_f_exact truncates X at n") {
    // X = 10 > n = 6 behaves exactly like X = 6
    const Motif k3 = motif_from_name("K3");
    const double big = h_f_exact(k3, 6, 3, LayerTypeLaw::deterministic(10, 0.5));
    const double exact = h_f_exact(k3, 6, 3, LayerTypeLaw::deterministic(6, 0.5));
    CHECK(big == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("h_f_exact is monotone in m and in pointwise Q increases") {
    const Motif k3 = motif_from_name("K3");
    const auto low = LayerTypeLaw::empirical({{3, 0.2, 0.5}, {5, 0.4, 0.5}});
    const auto high = LayerTypeLaw::empirical({{3, 0.3, 0.5}, {5, 0.6, 0.5}});
    double prev = 0.0;
    for (long long m = 1; m <= 6; ++m) {
        const double h = h_f_exact(k3, 10, m, low);
        CHECK(h >= prev);
        prev = h;
    }
    CHECK(h_f_exact(k3, 10, 4, high) >= h_f_exact(k3, 10, 4, low));
}

TEST_CASE("h_f_exact with a zeta law stays finite (truncated moments)") {
    const Motif k3 = motif_from_name("K3");
    const auto law = LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(0.5));
    const double h = h_f_exact(k3, 50, 50, law);
    CHECK(std::isfinite(h));
    CHECK(h > 0.0);
}

}  // TEST_SUITE
