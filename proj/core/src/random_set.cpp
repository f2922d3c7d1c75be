#include "coneq/random_set.hpp"

#include <algorithm>
#include <cmath>

namespace coneq {

CompactTestSet make_test_set(std::vector<Vec> points) {
    if (points.empty()) throw_bad_input("compact test set needs at least one point");
    for (const Vec& p : points) {
        if (!all_finite(p)) throw_bad_input("compact test set has non-finite points");
    }
    return CompactTestSet{std::move(points)};
}

RegionDraw draw(const QuantileFn& q, SeededRng& rng) {
    double u = rng.next_unit();
    return RegionDraw{u, q.lower_quantile(u)};
}

bool hits(const QuantileFn& q, double u, const CompactTestSet& k) {
    if (k.points.empty()) throw_bad_input("compact test set is empty");
    for (const Vec& z : k.points) {
        if (q.member(u, z)) return true;
    }
    return false;
}

double capacity_exact(const ConeCdf& c, const CompactTestSet& k) {
    if (k.points.empty()) throw_bad_input("compact test set is empty");
    double m = 0.0;
    bool first = true;
    for (const Vec& z : k.points) {
        double v = c.lower_cdf(z);
        if (first || v > m) m = v;
        first = false;
    }
    return m;
}

CapacityEstimate capacity_mc_trace(const QuantileFn& q, const CompactTestSet& k, long n,
                                   SeededRng rng, std::vector<std::pair<double, bool>>* trace) {
    if (n < 100) throw_bad_config("capacity Monte Carlo needs n >= 100 draws");
    if (k.points.empty()) throw_bad_input("compact test set is empty");

    // member(u, z) compares u against lower_cdf(z), which is draw
    // independent; evaluate the per-point values once up front.
    std::vector<double> values;
    values.reserve(k.points.size());
    for (const Vec& z : k.points) values.push_back(q.cdf().lower_cdf(z));
    const double max_value = *std::max_element(values.begin(), values.end());

    long hits_count = 0;
    if (trace) trace->reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        double u = rng.unit_at(static_cast<std::uint64_t>(i));
        bool hit = u <= max_value;  // == exists z in K with member(u, z)
        if (hit) ++hits_count;
        if (trace) trace->emplace_back(u, hit);
    }

    CapacityEstimate est;
    est.exact = max_value;
    est.n_draws = n;
    est.n_hits = hits_count;
    est.mc_estimate = static_cast<double>(hits_count) / static_cast<double>(n);
    est.std_error = std::sqrt(est.mc_estimate * (1.0 - est.mc_estimate) / static_cast<double>(n));
    est.seed = rng.seed();
    return est;
}

CapacityEstimate capacity_mc(const QuantileFn& q, const CompactTestSet& k, long n, SeededRng rng) {
    return capacity_mc_trace(q, k, n, rng, nullptr);
}

}  // namespace coneq
