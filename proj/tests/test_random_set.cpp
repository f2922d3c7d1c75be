#include <doctest.h>

#include <cmath>

#include "coneq/random_set.hpp"
#include "oracles.hpp"

using namespace coneq;

namespace {

QuantileFn s4_qf() {
    return QuantileFn(ConeCdf(
        EmpiricalSample({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}),
        ConvexCone::orthant(2)));
}

}  // namespace

TEST_CASE("splitmix stream is reproducible and order independent") {
    SeededRng a(42), b(42);
    for (int i = 0; i < 10; ++i) CHECK(a.next_unit() == b.next_unit());
    SeededRng c(42);
    CHECK(c.unit_at(7) == SeededRng(42).unit_at(7));
    CHECK(SeededRng(42).unit_at(0) != SeededRng(43).unit_at(0));
    double u = SeededRng(9).unit_at(123);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("draws are deterministic and carry the quantile region") {
    QuantileFn q = s4_qf();
    SeededRng r1(7), r2(7);
    RegionDraw d1 = draw(q, r1);
    RegionDraw d2 = draw(q, r2);
    CHECK(d1.u == d2.u);
    oracle::Rng probe(3);
    for (int k = 0; k < 50; ++k) {
        Vec z = {probe.range(-1.0, 2.0), probe.range(-1.0, 2.0)};
        CHECK(region_member(d1.region, z) == region_member(d2.region, z));
        // The scalar view and the region view agree up to the outer hull.
        if (q.member(d1.u, z)) CHECK(region_member(d1.region, z));
    }
}

TEST_CASE("hit events against finite compacts") {
    QuantileFn q = s4_qf();
    CompactTestSet k1 = make_test_set({{1.0, 1.0}});
    CHECK(hits(q, 0.9, k1));
    CompactTestSet k0 = make_test_set({{0.0, 0.0}});
    CHECK_FALSE(hits(q, 0.5, k0));
    CHECK(hits(q, 0.0, k0));  // the whole space meets everything
}

TEST_CASE("exact capacity: maxima and the singleton identity") {
    QuantileFn q = s4_qf();
    CHECK(capacity_exact(q.cdf(), make_test_set({{1.0, 1.0}})) == 1.0);
    CHECK(capacity_exact(q.cdf(), make_test_set({{0.0, 0.0}})) == 0.25);
    CHECK(capacity_exact(q.cdf(), make_test_set({{0.0, 0.0}, {1.0, 1.0}})) == 1.0);

    oracle::Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        Vec z = {rng.range(-1.0, 2.0), rng.range(-1.0, 2.0)};
        CHECK(capacity_exact(q.cdf(), make_test_set({z})) == q.cdf().lower_cdf(z));
    }
}

TEST_CASE("hit test equals the capacity threshold test") {
    QuantileFn q = s4_qf();
    CompactTestSet k = make_test_set({{0.0, 0.0}, {0.2, 0.9}, {1.5, -0.5}});
    double cap = capacity_exact(q.cdf(), k);
    SeededRng rng(99);
    for (int i = 0; i < 500; ++i) {
        double u = rng.next_unit();
        CHECK(hits(q, u, k) == (u <= cap));
    }
}

TEST_CASE("capacity is monotone and max-stable over unions") {
    QuantileFn q = s4_qf();
    oracle::Rng rng(13);
    for (int t = 0; t < 20; ++t) {
        std::vector<Vec> a = oracle::random_points(rng, rng.integer(1, 4), 2, -1.0, 2.0);
        std::vector<Vec> b = oracle::random_points(rng, rng.integer(1, 4), 2, -1.0, 2.0);
        std::vector<Vec> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        double ca = capacity_exact(q.cdf(), make_test_set(a));
        double cb = capacity_exact(q.cdf(), make_test_set(b));
        double cab = capacity_exact(q.cdf(), make_test_set(ab));
        CHECK(cab == std::max(ca, cb));
        CHECK(ca <= cab);
    }
}

TEST_CASE("monte carlo estimate concentrates around the exact capacity") {
    QuantileFn q = s4_qf();
    CompactTestSet k = make_test_set({{0.0, 0.0}});
    CapacityEstimate est = capacity_mc(q, k, 20000, SeededRng(7));
    CHECK(est.exact == 0.25);
    CHECK(est.n_draws == 20000);
    CHECK(est.std_error == doctest::Approx(std::sqrt(est.mc_estimate * (1 - est.mc_estimate) / 20000)));
    CHECK(std::abs(est.mc_estimate - est.exact) <= 3.0 * est.std_error);

    // Identical seed, identical estimate.
    CapacityEstimate again = capacity_mc(q, k, 20000, SeededRng(7));
    CHECK(again.mc_estimate == est.mc_estimate);
    CHECK(again.n_hits == est.n_hits);

    // Probability-one hit set.
    CapacityEstimate sure = capacity_mc(q, make_test_set({{1.0, 1.0}}), 500, SeededRng(3));
    CHECK(sure.mc_estimate == 1.0);
    CHECK(sure.std_error == 0.0);
}

TEST_CASE("trace records one (u, hit) pair per draw") {
    QuantileFn q = s4_qf();
    CompactTestSet k = make_test_set({{0.0, 0.0}});
    std::vector<std::pair<double, bool>> trace;
    CapacityEstimate est = capacity_mc_trace(q, k, 250, SeededRng(21), &trace);
    REQUIRE(trace.size() == 250);
    long hits_count = 0;
    for (const auto& [u, hit] : trace) {
        CHECK(hit == (u <= est.exact));
        hits_count += hit;
    }
    CHECK(hits_count == est.n_hits);
}

TEST_CASE("configuration guards") {
    QuantileFn q = s4_qf();
    CHECK_THROWS_AS(capacity_mc(q, make_test_set({{0.0, 0.0}}), 99, SeededRng(1)), Error);
    CHECK_THROWS_AS(make_test_set({}), Error);
}
