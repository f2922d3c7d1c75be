#pragma once

#include <cstdint>
#include <vector>

#include "coneq/quantile.hpp"
#include "coneq/rng.hpp"

namespace coneq {

// Finite compact test set K. Finiteness makes max over K of the lower
// cdf exactly computable, so capacity values are exact.
struct CompactTestSet {
    std::vector<Vec> points;
};

CompactTestSet make_test_set(std::vector<Vec> points);

struct CapacityEstimate {
    double exact = 0.0;
    double mc_estimate = 0.0;
    long n_draws = 0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    long n_hits = 0;
};

struct RegionDraw {
    double u;
    Region region;
};

// One draw of the set-valued random variable: u uniform on [0, 1), and
// the lower quantile region at u. Deterministic given the rng state.
RegionDraw draw(const QuantileFn& q, SeededRng& rng);

// Hit event {X(u) meets K}: true iff some z in K satisfies member(u, z).
bool hits(const QuantileFn& q, double u, const CompactTestSet& k);

// Capacity of K: max over K of the lower cdf.
double capacity_exact(const ConeCdf& c, const CompactTestSet& k);

// Monte-Carlo hit frequency over n draws against the exact capacity.
// Per-point lower cdf values are evaluated once (they do not depend on
// the draw); each draw then tests the hit event through them. n >= 100.
CapacityEstimate capacity_mc(const QuantileFn& q, const CompactTestSet& k, long n, SeededRng rng);

// As capacity_mc, but also records (u, hit) per draw.
CapacityEstimate capacity_mc_trace(const QuantileFn& q, const CompactTestSet& k, long n,
                                   SeededRng rng, std::vector<std::pair<double, bool>>* trace);

}  // namespace coneq
