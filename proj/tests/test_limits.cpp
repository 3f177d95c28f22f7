#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "supergraph/errors.hpp"
#include "supergraph/graph_core.hpp"
#include "supergraph/limits.hpp"
#include "supergraph/motif.hpp"

using namespace supergraph;

namespace {

// exhaustive oracle: Var of the triangle count in G(4, q) over all 2^6 graphs
double triangle_variance_g4_oracle(double q) {
    const Edge pairs[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    double mean = 0.0, mean_sq = 0.0;
    for (unsigned mask = 0; mask < 64; ++mask) {
        double prob = 1.0;
        for (int e = 0; e < 6; ++e) prob *= (mask >> e & 1) ? q : (1.0 - q);
        int triangles = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                for (int c = b + 1; c < 4; ++c) {
                    auto has = [&](int u, int v) {
                        for (int e = 0; e < 6; ++e)
                            if (pairs[e] == make_edge(u, v)) return (mask >> e & 1) != 0;
                        return false;
                    };
                    if (has(a, b) && has(a, c) && has(b, c)) ++triangles;
                }
        mean += prob * triangles;
        mean_sq += prob * triangles * triangles;
    }
    return mean_sq - mean * mean;
}

double normal_quantile_bisect(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (standard_normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("limits") {

TEST_CASE("n_f_star closed forms") {
    const Motif c4 = motif_from_name("C4");
    // (X)_k Q^k / (2k) at X=5, Q=0.5: 120 * 0.0625 / 8
    CHECK(n_f_star(c4, 5, 0.5) == doctest::Approx(0.9375));
    const Motif k3 = motif_from_name("K3");
    CHECK(n_f_star(k3, 2, 0.9) == doctest::Approx(0.0));
    CHECK(n_f_star(k3, 6, 1.0) == doctest::Approx(20.0));  // C(6,3)
    CHECK_THROWS_AS(n_f_star(k3, 5, 1.5), ConfigInvalid);
}

TEST_CASE("n_f_star matches empirical single-layer means on a grid") {
    const Motif k3 = motif_from_name("K3");
    RandomSource rng(404);
    for (long long x = 4; x <= 8; ++x)
        for (double q : {0.25, 0.5, 0.75}) {
            const int draws = 20000;
            double sum = 0.0, sum_sq = 0.0;
            for (int i = 0; i < draws; ++i) {
                const auto layer = generate_layer(static_cast<int>(x), 0, x, q, rng);
                const double c = static_cast<double>(count_in_graph(k3, layer.local_graph()));
                sum += c;
                sum_sq += c * c;
            }
            const double mean = sum / draws;
            const double var = (sum_sq - draws * mean * mean) / (draws - 1);
            const double se = std::sqrt(var / draws);
            CAPTURE(x);
            CAPTURE(q);
            CHECK(std::abs(mean - n_f_star(k3, x, q)) < 3.5 * se);
        }
}

TEST_CASE("conditional stats vanish below the motif size") {
    const Motif k3 = motif_from_name("K3");
    const auto cs = conditional_stats(k3, 2, 0.5);
    CHECK(cs.n_f_star == 0.0);
    const auto cs5 = conditional_stats(k3, 5, 0.5);
    CHECK(cs5.psi == doctest::Approx(std::pow(5.0, 3) * 0.125));
    CHECK(cs5.n_f_star > 0.0);
}

TEST_CASE("sigma exact_small: degenerate point mass") {
    const Motif k3 = motif_from_name("K3");
    const auto est =
        sigma_f_squared(k3, LayerTypeLaw::deterministic(3, 1.0), SigmaMethod::exact_small);
    CHECK(est.value == doctest::Approx(0.0));
    CHECK(est.degenerate);
}

TEST_CASE("sigma exact_small matches the exhaustive 64-graph oracle") {
    const Motif k3 = motif_from_name("K3");
    for (double q : {0.25, 0.5, 0.8}) {
        const auto est =
            sigma_f_squared(k3, LayerTypeLaw::deterministic(4, q), SigmaMethod::exact_small);
        CAPTURE(q);
        CHECK(est.value == doctest::Approx(triangle_variance_g4_oracle(q)).epsilon(1e-10));
        // point mass on X: Var N_F* = 0, everything is conditional variance
        CHECK(est.var_n_f_star == doctest::Approx(0.0));
    }
}

TEST_CASE("sigma decomposition: Q == 1 kills the conditional term") {
    const Motif k3 = motif_from_name("K3");
    const auto law = LayerTypeLaw::independent(XLaw::table({3, 6}, {0.5, 0.5}),
                                               QLaw::constant(1.0));
    const auto est = sigma_f_squared(k3, law, SigmaMethod::exact_small);
    CHECK(est.mean_conditional_var == doctest::Approx(0.0));
    // N_F = C(X,3): values 1 and 20 with prob 1/2 -> Var = (19/2)^2
    CHECK(est.var_n_f_star == doctest::Approx(90.25));
    CHECK(est.value == doctest::Approx(90.25));
    CHECK(est.var_n_f_star >= 0.0);
    CHECK(est.mean_conditional_var >= 0.0);
}

TEST_CASE("sigma: exact_small and monte_carlo agree within joint error bars") {
    const Motif k3 = motif_from_name("K3");
    const auto law = LayerTypeLaw::independent(XLaw::table({3, 6}, {0.5, 0.5}),
                                               QLaw::constant(0.5));
    const auto exact = sigma_f_squared(k3, law, SigmaMethod::exact_small);
    const auto mc = sigma_f_squared(k3, law, SigmaMethod::monte_carlo, 40000, 2718);
    CHECK(std::abs(exact.value - mc.value) < 3.0 * mc.std_error);
    CHECK(mc.std_error > 0.0);
}

TEST_CASE("sigma guard rails") {
    const Motif k3 = motif_from_name("K3");
    const auto unbounded = LayerTypeLaw::independent(XLaw::zeta(8.0, 1), QLaw::constant(0.5));
    CHECK_THROWS_AS(sigma_f_squared(k3, unbounded, SigmaMethod::exact_small),
                    MethodBudgetExceeded);
    const auto too_big = LayerTypeLaw::deterministic(31, 0.5);
    CHECK_THROWS_AS(sigma_f_squared(k3, too_big, SigmaMethod::exact_small),
                    MethodBudgetExceeded);
    // heavy tail: the variance surrogate reports INFINITE instead of throwing
    const auto heavy = LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(0.5));
    const auto est = sigma_f_squared(k3, heavy, SigmaMethod::exact_small);
    CHECK_FALSE(est.finite);
    CHECK(std::isinf(est.value));
}

TEST_CASE("normalize: centering, scaling, affine order preservation") {
    Normalization norm;
    norm.regime = Regime::normal;
    norm.sigma_f = 2.0;
    norm.b_m = 10.0;
    norm.scale = 4.0;
    CHECK(normalize({10.0}, norm)[0] == doctest::Approx(0.0));
    CHECK(normalize({14.0}, norm)[0] == doctest::Approx(1.0));
    CHECK(normalize({6.0}, norm)[0] == doctest::Approx(-1.0));

    // stable arithmetic example: 512 / 256^{1/0.8} = 0.5
    const auto stable = make_stable_normalization(0.8, 256, 0.0);
    CHECK(stable.b_m == doctest::Approx(0.0));
    CHECK(normalize({512.0}, stable)[0] == doctest::Approx(0.5));

    // argsort preserved
    const std::vector<double> counts = {5.0, -3.0, 12.0, 0.0};
    const auto z = normalize(counts, norm);
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = 0; j < counts.size(); ++j)
            CHECK((counts[i] < counts[j]) == (z[i] < z[j]));

    norm.scale = 0.0;
    CHECK_THROWS_AS(normalize({1.0}, norm), ZeroScale);
}

TEST_CASE("stable centering switches at alpha = 1") {
    CHECK(make_stable_normalization(1.5, 100, 2.0).b_m == doctest::Approx(200.0));
    CHECK(make_stable_normalization(0.7, 100, 2.0).b_m == doctest::Approx(0.0));
    CHECK_THROWS_AS(make_stable_normalization(1.0, 100, 2.0), AlphaOneUnsupported);
    CHECK_THROWS_AS(make_stable_normalization(2.0, 100, 2.0), AlphaOutOfRange);
}

TEST_CASE("positive stable sampler: support and tail index") {
    RandomSource rng(55);
    const auto draws = sample_positive_stable(0.5, 1.0, 20000, rng);
    for (double d : draws) CHECK(d > 0.0);

    RandomSource rng2(56);
    const auto big = sample_positive_stable(0.7, 1.0, 1000000, rng2);
    const double hill = hill_estimator(big, 10000);
    CHECK(std::abs(hill - 0.7) / 0.7 < 0.10);

    CHECK_THROWS_AS(sample_positive_stable(1.0, 1.0, 10, rng), AlphaOneUnsupported);
    CHECK_THROWS_AS(sample_positive_stable(2.3, 1.0, 10, rng), AlphaOutOfRange);
}

TEST_CASE("stable sampler with alpha > 1 also matches its tail") {
    RandomSource rng(57);
    const auto draws = sample_positive_stable(1.5, 1.0, 1000000, rng);
    const double hill = hill_estimator(draws, 10000);
    CHECK(std::abs(hill - 1.5) / 1.5 < 0.10);
}

TEST_CASE("hill estimator on exact Pareto quantiles") {
    // quantiles of Pareto(alpha=1): x = 1/(1-u)
    std::vector<double> samples;
    const int n = 100000;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) / n;
        samples.push_back(1.0 / (1.0 - u));
    }
    const double hill = hill_estimator(samples, default_hill_k(n));
    CHECK(std::abs(hill - 1.0) < 0.05);
}

TEST_CASE("hill estimator guard rails") {
    CHECK_THROWS_AS(hill_estimator({1.0, 2.0, 3.0}, 1), InsufficientSamples);
    CHECK_THROWS_AS(hill_estimator({1.0, 2.0}, 2), InsufficientSamples);
    CHECK_THROWS_AS(hill_estimator({-1.0, -2.0, 0.0, 0.0}, 2), InsufficientSamples);
    CHECK_THROWS_AS(hill_estimator({5.0, 5.0, 5.0, 5.0, 5.0}, 2), DegenerateSample);
}

TEST_CASE("two-sample KS on canonical inputs") {
    CHECK(ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == doctest::Approx(0.0));
    CHECK(ks_two_sample({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ks_two_sample({}, {1.0}), EmptySample);

    // N(0,1) quantile grid vs the same grid shifted by 3: the true distance is
    // Phi(1.5) - Phi(-1.5) = erf(1.5/sqrt(2))
    std::vector<double> a, b;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        const double q = normal_quantile_bisect((i + 0.5) / n);
        a.push_back(q);
        b.push_back(q + 3.0);
    }
    const double truth = std::erf(1.5 / std::sqrt(2.0));
    CHECK(ks_two_sample(a, b) == doctest::Approx(truth).epsilon(0.01));
}

TEST_CASE("one-sample normal KS") {
    std::vector<double> grid;
    const int n = 1000;
    for (int i = 1; i <= n; ++i) grid.push_back(normal_quantile_bisect((i - 0.5) / n));
    CHECK(ks_one_sample_normal(grid) <= 0.001);

    CHECK(ks_one_sample_normal({0.0}) == doctest::Approx(0.5));
    CHECK(ks_one_sample_normal({10.0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(ks_one_sample_normal({}), EmptySample);
}

TEST_CASE("normal quantile agrees with bisection") {
    for (double p : {0.001, 0.01, 0.1, 0.3, 0.5, 0.77, 0.99, 0.9999}) {
        CAPTURE(p);
        CHECK(standard_normal_quantile(p) ==
              doctest::Approx(normal_quantile_bisect(p)).epsilon(1e-9));
    }
}

TEST_CASE("pairwise sum is exact on adversarial orderings") {
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-13));
    CHECK(sample_mean(v) == doctest::Approx(0.1).epsilon(1e-13));
    std::vector<double> w = {1.0, 2.0, 3.0, 4.0};
    CHECK(sample_variance(w) == doctest::Approx(5.0 / 3.0));
}

}  // TEST_SUITE
