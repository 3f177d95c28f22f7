#include <doctest.h>

#include <cmath>

#include "supergraph/errors.hpp"
#include "supergraph/layer_model.hpp"
#include "supergraph/motif.hpp"
#include "supergraph/rng.hpp"

using namespace supergraph;

namespace {

// independent oracle: direct Kahan partial sums of the zeta pmf
double zeta_partial_moment(double gamma, long long x_min, double s, double beta, double b,
                           double t, long long n_terms) {
    long double num = 0.0L, z = 0.0L;
    for (long long x = x_min; x <= n_terms; ++x) {
        const long double pmf = std::pow(static_cast<long double>(x), -(gamma + 1.0));
        z += pmf;
        long double term = std::pow(static_cast<long double>(x), s) * pmf;
        if (t > 0.0) {
            const long double q =
                std::min(1.0L, static_cast<long double>(b) *
                                   std::pow(static_cast<long double>(x), -beta));
            term *= std::pow(q, static_cast<long double>(t));
        }
        num += term;
    }
    return static_cast<double>(num / z);
}

}  // namespace

TEST_SUITE("layer_model") {

TEST_CASE("deterministic law sampling and moments") {
    const auto law = LayerTypeLaw::deterministic(5, 0.3);
    RandomSource rng(1);
    for (int i = 0; i < 10; ++i) {
        const auto [x, q] = sample_layer_type(law, rng);
        CHECK(x == 5);
        CHECK(q == doctest::Approx(0.3));
    }
    CHECK(mixed_moment(law, {2, 1}) == doctest::Approx(7.5));  // 25 * 0.3
    CHECK(mixed_moment(law, {0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("coupled law satisfies Q = min(1, b X^-beta) exactly") {
    const auto law = LayerTypeLaw::coupled(XLaw::uniform(1, 50), 1.0, 1.0);
    RandomSource rng(2);
    for (int i = 0; i < 200; ++i) {
        const auto [x, q] = sample_layer_type(law, rng);
        CHECK(q == std::min(1.0, 1.0 * std::pow(static_cast<double>(x), -1.0)));
    }
    CHECK(law.coupled_q(4) == doctest::Approx(0.25));
}

TEST_CASE("table law moments are exact") {
    const auto law =
        LayerTypeLaw::independent(XLaw::table({2, 4}, {0.5, 0.5}), QLaw::constant(1.0));
    CHECK(mixed_moment(law, {1, 0}) == doctest::Approx(3.0));
    CHECK(mixed_moment(law, {2, 3}) == doctest::Approx(10.0));
}

TEST_CASE("zeta sampling mean matches the pmf-sum oracle within 1%") {
    const auto law = LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(1.0));
    RandomSource rng(42);
    double sum = 0.0;
    const long long draws = 1000000;
    for (long long i = 0; i < draws; ++i) sum += static_cast<double>(sample_layer_type(law, rng).first);
    const double empirical = sum / static_cast<double>(draws);
    const double oracle = zeta_partial_moment(2.4, 1, 1.0, 0, 0, 0, 2000000);
    CHECK(std::abs(empirical - oracle) / oracle < 0.01);
}

TEST_CASE("zeta moments match brute-force partial sums to 1e-6") {
    // comparison applies only where the partial sum itself converges: the
    // integral bound on the discarded tail must be negligible
    const long long n_terms = 10000000;
    const double gamma = 2.4;
    const auto law = LayerTypeLaw::independent(XLaw::zeta(gamma, 1), QLaw::constant(0.5));
    struct Case {
        double s, t;
    };
    for (const Case c : {Case{1.0, 0.0}, Case{1.4, 1.0}, Case{0.5, 3.0}, Case{1.5, 0.0}}) {
        const double ours = mixed_moment(law, {c.s, c.t});
        const double oracle =
            zeta_partial_moment(gamma, 1, c.s, 0, 0, 0, n_terms) * std::pow(0.5, c.t);
        const double tail_bound =
            std::pow(static_cast<double>(n_terms), c.s - gamma) / (gamma - c.s);
        REQUIRE(tail_bound / oracle < 5e-7);  // oracle converged under the tolerance
        CAPTURE(c.s);
        CAPTURE(c.t);
        CHECK(std::abs(ours - oracle) / oracle < 1e-6);
    }

    // coupled variant
    const auto coupled = LayerTypeLaw::coupled(XLaw::zeta(1.8, 2), 2.0, 0.7);
    const double ours = mixed_moment(coupled, {1.2, 2.0});
    const double oracle = zeta_partial_moment(1.8, 2, 1.2, 0.7, 2.0, 2.0, n_terms);
    CHECK(std::abs(ours - oracle) / oracle < 1e-6);
}

TEST_CASE("divergent series report INFINITE") {
    const auto law = LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(0.5));
    CHECK(std::isinf(mixed_moment(law, {3.0, 0.0})));   // s >= gamma
    CHECK(std::isinf(mixed_moment(law, {2.4, 0.0})));   // boundary diverges
    CHECK(std::isfinite(mixed_moment(law, {2.39, 0.0})));

    // coupling shifts the effective exponent by beta*t
    const auto coupled = LayerTypeLaw::coupled(XLaw::zeta(2.0, 1), 1.0, 1.0);
    CHECK(std::isinf(mixed_moment(coupled, {2.5, 0.0})));
    CHECK(std::isfinite(mixed_moment(coupled, {2.5, 1.0})));  // 2.5 - 1 < 2
}

TEST_CASE("truncated moments are always finite") {
    const auto law = LayerTypeLaw::independent(XLaw::zeta(1.5, 1), QLaw::constant(0.9));
    CHECK(std::isinf(mixed_moment(law, {4.0, 0.0})));
    CHECK(std::isfinite(mixed_moment(law, {4.0, 0.0, 100})));
    CHECK(std::isfinite(mixed_moment(law, {4.0, 0.0, 1000000})));
    CHECK(std::isfinite(factorial_moment(law, 6, 0.0, 50)));

    // truncated moment equals the direct truncated sum
    const double ours = mixed_moment(law, {4.0, 0.0, 100});
    long double num = 0.0L, z = 0.0L;
    for (long long x = 1; x <= 10000000; ++x) {
        const long double pmf = std::pow(static_cast<long double>(x), -2.5L);
        z += pmf;
        num += std::pow(static_cast<long double>(std::min(x, 100LL)), 4.0L) * pmf;
    }
    CHECK(ours == doctest::Approx(static_cast<double>(num / z)).epsilon(1e-6));
}

TEST_CASE("mixed_moment is nonincreasing in t for fixed s") {
    const std::vector<LayerTypeLaw> laws = {
        LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(0.5)),
        LayerTypeLaw::independent(XLaw::uniform(1, 9), QLaw::beta(2.0, 3.0)),
        LayerTypeLaw::coupled(XLaw::zeta(3.0, 1), 1.0, 0.5),
        LayerTypeLaw::empirical({{2, 0.8, 0.3}, {6, 0.2, 0.7}}),
    };
    for (const auto& law : laws)
        for (double s : {0.0, 1.0, 1.7})
            for (double t = 0.0; t < 3.0; t += 0.5) {
                const double hi = mixed_moment(law, {s, t});
                const double lo = mixed_moment(law, {s, t + 0.5});
                if (std::isfinite(hi)) CHECK(lo <= hi * (1 + 1e-12));
            }
}

TEST_CASE("beta Q law: closed-form moments match numerical integration") {
    const QLaw q = QLaw::beta(2.0, 5.0);
    // Simpson's rule on q^t * density
    auto density = [&](double x) {
        return std::pow(x, 1.0) * std::pow(1.0 - x, 4.0) /
               std::exp(std::lgamma(2.0) + std::lgamma(5.0) - std::lgamma(7.0));
    };
    for (double t : {1.0, 2.0, 3.5}) {
        const int steps = 20000;
        double integral = 0.0;
        for (int i = 0; i < steps; ++i) {
            const double a = static_cast<double>(i) / steps;
            const double b = static_cast<double>(i + 1) / steps;
            const double mid = 0.5 * (a + b);
            integral += (b - a) / 6.0 *
                        (std::pow(a, t) * density(a) + 4.0 * std::pow(mid, t) * density(mid) +
                         std::pow(b, t) * density(b));
        }
        CHECK(q.moment(t) == doctest::Approx(integral).epsilon(1e-6));
    }

    // sampled moments agree too
    RandomSource rng(9);
    double s1 = 0.0, s2 = 0.0;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) {
        const double v = q.sample(rng);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        s1 += v;
        s2 += v * v;
    }
    CHECK(s1 / draws == doctest::Approx(q.moment(1.0)).epsilon(0.01));
    CHECK(s2 / draws == doctest::Approx(q.moment(2.0)).epsilon(0.02));
}

TEST_CASE("normal conditions: bounded law satisfies everything") {
    const Motif k3 = motif_from_name("K3");
    const auto law = LayerTypeLaw::deterministic(5, 0.3);
    const auto report = check_normal_conditions(law, k3);
    CHECK(report.all_satisfied());
    for (const auto& c : report.checks) CHECK(c.status == ConditionStatus::satisfied);
}

TEST_CASE("normal conditions: heavy tail violates the variance surrogate") {
    const Motif k3 = motif_from_name("K3");
    const auto law = LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(0.5));
    const auto report = check_normal_conditions(law, k3);
    CHECK_FALSE(report.all_satisfied());
    const auto* surrogate = report.find("variance surrogate E[X^{2v}Q^{2e}] finite");
    REQUIRE(surrogate != nullptr);
    CHECK(surrogate->status == ConditionStatus::violated);  // E X^6 diverges
    const auto* ex = report.find("E[X] finite");
    REQUIRE(ex != nullptr);
    CHECK(ex->status == ConditionStatus::satisfied);
}

TEST_CASE("normal conditions: surrogate is not applicable for unbalanced motifs") {
    // 2-connected but unbalanced: K4 with a 4-edge handle (density 10/7 < 3/2)
    const Motif m = analyze_motif(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                      {0, 4}, {4, 5}, {5, 6}, {6, 3}});
    REQUIRE(m.two_connected);
    REQUIRE_FALSE(m.balanced);
    const auto report =
        check_normal_conditions(LayerTypeLaw::deterministic(5, 0.5), m);
    const auto* surrogate = report.find("variance surrogate E[X^{2v}Q^{2e}] finite");
    REQUIRE(surrogate != nullptr);
    CHECK(surrogate->status == ConditionStatus::not_applicable);
}

TEST_CASE("clique conditions use r_hat = C(r-1,2)+1") {
    // r = 2,3,4,5 -> r_hat = 1,2,4,7
    const Motif k5 = motif_from_name("K5");
    const auto report = check_normal_conditions(LayerTypeLaw::deterministic(3, 1.0), k5);
    int found = 0;
    for (int r = 2; r <= 5; ++r) {
        const auto* c = report.find("clique overlap moment r=" + std::to_string(r));
        REQUIRE(c != nullptr);
        ++found;
        const long long r_hat = static_cast<long long>(r - 1) * (r - 2) / 2 + 1;
        const long long expected[] = {0, 0, 1, 2, 4, 7};
        CHECK(r_hat == expected[r]);
        // deterministic X=3, Q=1: moment value is 3^{r - r_hat/20}
        const double expo = r - static_cast<double>(r_hat) / 20.0;
        CHECK(c->value == doctest::Approx(std::pow(3.0, expo)));
    }
    CHECK(found == 4);

    // non-clique motifs get no clique checks
    const auto c4_report =
        check_normal_conditions(LayerTypeLaw::deterministic(3, 1.0), motif_from_name("C4"));
    CHECK(c4_report.find("clique overlap moment r=2") == nullptr);
}

TEST_CASE("stable conditions: the K3 power-law case") {
    const Motif k3 = motif_from_name("K3");
    const auto law = LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(0.5));
    const auto report = check_stable_conditions(law, k3, 0.8);
    CHECK(report.all_satisfied());
    REQUIRE(report.gamma.has_value());
    CHECK(*report.gamma == doctest::Approx(2.4));

    // inequality (lhs) 1 + 2*(1 - 1/2.4) = 2.1666... < 2.4
    const auto* ineq = report.find("tail exponent inequality");
    REQUIRE(ineq != nullptr);
    CHECK(ineq->status == ConditionStatus::satisfied);
    CHECK(ineq->value == doctest::Approx(1.0 + 2.0 * (1.0 - 1.0 / 2.4)));

    // gamma = alpha * v_F round trip
    const auto* match = report.find("gamma equals alpha*v_F");
    REQUIRE(match != nullptr);
    CHECK(match->status == ConditionStatus::satisfied);
    CHECK(std::abs(*report.gamma - 0.8 * 3.0) <= 1e-12);
}

TEST_CASE("stable conditions: Corollary tail scale with Q == 1") {
    const Motif k3 = motif_from_name("K3");
    const auto law = LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(1.0));
    const auto report = check_stable_conditions(law, k3, 0.8);
    REQUIRE(report.tail_scale_a.has_value());
    // a = b * (a_F/v_F!)^{gamma/v_F} * E Q^{gamma e/v} = b * 6^{-0.8}
    const double b = law.x_law().tail_scale();
    CHECK(*report.tail_scale_a == doctest::Approx(b * std::pow(6.0, -0.8)).epsilon(1e-12));
}

TEST_CASE("stable conditions: guard rails") {
    const Motif k3 = motif_from_name("K3");
    const auto law = LayerTypeLaw::independent(XLaw::zeta(2.4, 1), QLaw::constant(0.5));
    CHECK_THROWS_AS(check_stable_conditions(law, k3, 2.5), AlphaOutOfRange);
    CHECK_THROWS_AS(check_stable_conditions(law, k3, 0.0), AlphaOutOfRange);

    const Motif p3 = analyze_motif(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(check_stable_conditions(law, p3, 0.8), NotTwoConnected);
    CHECK_THROWS_AS(check_normal_conditions(law, p3), NotTwoConnected);

    const Motif handle = analyze_motif(7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                           {0, 4}, {4, 5}, {5, 6}, {6, 3}});
    REQUIRE(handle.two_connected);
    REQUIRE_FALSE(handle.balanced);
    CHECK_THROWS_AS(check_stable_conditions(law, handle, 0.8), NotBalanced);
}

TEST_CASE("zeta tail scale matches the empirical tail") {
    const XLaw xl = XLaw::zeta(2.4, 1);
    // P{X > t} ~ b t^-2.4; check at t = 50 against the pmf sum
    long double tail = 0.0L;
    for (long long x = 51; x <= 5000000; ++x)
        tail += std::pow(static_cast<long double>(x), -3.4L);
    tail /= static_cast<long double>(xl.zeta_norm);
    const double predicted = xl.tail_scale() * std::pow(50.0, -2.4);
    CHECK(static_cast<double>(tail) == doctest::Approx(predicted).epsilon(0.02));
}

TEST_CASE("empirical law validation") {
    CHECK_THROWS_AS(LayerTypeLaw::empirical({}), ConfigInvalid);
    CHECK_THROWS_AS(LayerTypeLaw::empirical({{-1, 0.5, 1.0}}), ConfigInvalid);
    CHECK_THROWS_AS(LayerTypeLaw::empirical({{1, 1.5, 1.0}}), ConfigInvalid);
    CHECK_THROWS_AS(LayerTypeLaw::empirical({{1, 0.5, 0.0}}), ConfigInvalid);
    const auto law = LayerTypeLaw::empirical({{3, 0.25, 2.0}, {7, 0.75, 6.0}});
    // weights normalize to 0.25/0.75
    CHECK(mixed_moment(law, {1, 0}) == doctest::Approx(0.25 * 3 + 0.75 * 7));
}

}  // TEST_SUITE
