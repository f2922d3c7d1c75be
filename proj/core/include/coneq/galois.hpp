#pragma once

#include <cstdint>
#include <vector>

#include "coneq/quantile.hpp"
#include "coneq/rng.hpp"

namespace coneq {

// Finite generator set G, denoting the lattice element cl co(G + C).
// The cone is taken from the ConeCdf / QuantileFn an operation runs
// against. The inf-extension over cl co(G + C) equals the minimum over G,
// so this form makes set-level values exactly computable.
struct GeneratorSet {
    std::vector<Vec> points;

    bool empty() const { return points.empty(); }
};

Region genset_region(const ConvexCone& cone, const GeneratorSet& g);

// inf over cl co(G + C) of the lower cdf = min over G; +inf for empty G.
double inf_extension(const ConeCdf& c, const GeneratorSet& g);

// Directional inf-extension along w: F_{w.X}(inf over G of w.g);
// +inf for empty G.
double inf_extension_dir(const ConeCdf& c, const Vec& w, const GeneratorSet& g);

// Both sides of the adjunction at level p:
//   region_covers:  every generator lies in the lower quantile at p
//   level_leq:      p <= inf_extension(G)
// The two must agree; callers assert it.
struct AdjunctionCheck {
    bool region_covers = false;
    bool level_leq = false;
    double value = 0.0;  // inf_extension(G)
};

AdjunctionCheck adjunction_check(const QuantileFn& q, double p, const GeneratorSet& g);

// Closure from the scalar ranking: the lower quantile at inf_extension(G).
Region scalar_closure(const QuantileFn& q, const GeneratorSet& g);

// Closure from the directional family: per direction w the halfspace
// {z : w.z >= q_w(inf_extension_dir(w, G))}, intersected over the
// direction set (outer approximation, like lower_quantile).
Region directional_closure(const ConeCdf& c, const GeneratorSet& g);

enum class RankFamily { Scalar, Directional };

Ordering rank_sets_scalar(const ConeCdf& c, const GeneratorSet& g1, const GeneratorSet& g2,
                          double tol = 0.0);
// Exact for empirical d = 2 (sweep over the joint critical directions of
// samples and generators); grid-evaluated otherwise.
DirectionalComparison rank_sets_directional(const ConeCdf& c, const GeneratorSet& g1,
                                            const GeneratorSet& g2, double tol = 0.0);

// Axis-aligned probe lattice used to operationalize set comparisons.
struct ProbeGrid {
    BBox box;
    int per_axis = 41;

    std::vector<Vec> points() const;
};

// Data-driven box: sample extent (or mu +- 3 sd per axis for Gaussian
// models), half-widths inflated by the given factor.
ProbeGrid default_probe_grid(const DistributionModel& model, int per_axis = 41,
                             double inflate = 0.25);

// True when G and its scalar closure agree on the probe grid, i.e. G
// denotes a fixed point of the closure operator.
bool is_fixed_point(const QuantileFn& q, const GeneratorSet& g, const ProbeGrid& probes);

struct ClosureReport {
    GeneratorSet input;
    double value = 0.0;  // inf_extension
    Region scalar;
    Region directional;
    bool scalar_fixed = false;
    bool directional_fixed = false;
};

ClosureReport closure_report(const QuantileFn& q, const GeneratorSet& g, const ProbeGrid& probes);

// Scan for probes that the directional closure adds to random generator
// sets. A probe counts as a violation only when it clears every closure
// halfspace by more than `margin`, which guards against the sliver left
// by intersecting finitely many directions; margin < 0 requests the
// automatic bound 2 * R * (max angular gap of the direction set).
struct IdentityScanReport {
    int trials = 0;
    long probes = 0;
    long violations = 0;
    double worst_excess = 0.0;  // largest margin cleared by a violating probe
    double margin = 0.0;
};

IdentityScanReport directional_identity_scan(const ConeCdf& c, int trials,
                                             const ProbeGrid& probes, SeededRng& rng,
                                             double margin = -1.0);

}  // namespace coneq
