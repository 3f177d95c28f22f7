#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "supergraph/rng.hpp"

using namespace supergraph;

TEST_SUITE("rng") {

TEST_CASE("sequences are reproducible and pinned") {
    RandomSource a(12345);
    CHECK(a.next_u64() == 13720838825685603483ULL);
    CHECK(a.next_u64() == 2398916695208396998ULL);
    CHECK(a.next_u64() == 17770384849984869256ULL);

    RandomSource b(7);
    CHECK(b.uniform01() == doctest::Approx(0.7005764821796896).epsilon(1e-15));
    CHECK(b.uniform01() == doctest::Approx(0.27875122947378428).epsilon(1e-15));

    RandomSource c1(999), c2(999);
    for (int i = 0; i < 100; ++i) CHECK(c1.next_u64() == c2.next_u64());
}

TEST_CASE("derive_seed is stable and collision-free over indices") {
    CHECK(derive_seed(42, 0) == 2949826092126892291ULL);
    CHECK(derive_seed(42, 1) == 6904877152625194467ULL);
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 10000);
}

TEST_CASE("uniform01 stays in [0,1) and below() respects its bound") {
    RandomSource r(3);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(r.below(7) < 7);
    }
}

TEST_CASE("below() is close to uniform") {
    RandomSource r(11);
    std::vector<int> counts(5, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++counts[r.below(5)];
    for (int c : counts) CHECK(std::abs(c - draws / 5) < 5 * std::sqrt(draws / 5.0));
}

TEST_CASE("geometric_skip matches the geometric mean") {
    RandomSource r(17);
    const double p = 0.1;
    double sum = 0.0;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) sum += static_cast<double>(r.geometric_skip(p));
    const double mean = sum / draws;  // E = (1-p)/p = 9
    CHECK(mean == doctest::Approx(9.0).epsilon(0.02));
}

TEST_CASE("normal() has the right first two moments") {
    RandomSource r(23);
    double s = 0.0, s2 = 0.0;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) {
        const double x = r.normal();
        s += x;
        s2 += x * x;
    }
    CHECK(std::abs(s / draws) < 0.01);
    CHECK(s2 / draws == doctest::Approx(1.0).epsilon(0.02));
}

}  // TEST_SUITE
