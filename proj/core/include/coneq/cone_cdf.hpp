#pragma once

#include <optional>

#include "coneq/distribution.hpp"
#include "coneq/geometry.hpp"

namespace coneq {

enum class Ordering { Less, Equal, Greater };

// Result of comparing two objects direction by direction over C+.
// `le` / `ge` hold when every direction agrees; both at once means equal,
// neither means incomparable.
struct DirectionalComparison {
    bool le = false;
    bool ge = false;

    enum class Outcome { LessOrEqual, GreaterOrEqual, Equal, Incomparable };
    Outcome outcome() const {
        if (le && ge) return Outcome::Equal;
        if (le) return Outcome::LessOrEqual;
        if (ge) return Outcome::GreaterOrEqual;
        return Outcome::Incomparable;
    }
};

struct LowerCdfResult {
    double value = 0.0;
    Vec argmin;  // a direction attaining (or nearly attaining) the infimum
};

// Lower C-distribution function machinery for one model and cone.
//
// Evaluation strategy by case:
//  - empirical, d = 2 (default): exact rotating sweep over the dual arc;
//    candidate directions are the arc endpoints, every direction
//    orthogonal to x_i - z, and midpoints of consecutive candidates, each
//    evaluated by a direct count, so the infimum over all of C+ \ {0} is
//    attained exactly.
//  - empirical or Gaussian, d = 1: the dual base is finite, exact.
//  - Gaussian, d = 2: grid minimum refined by golden-section search on
//    the arc around the grid argmin.
//  - d = 3 (any model): minimum over the direction grid; an upper bound
//    on the true infimum, by construction of the grid.
class ConeCdf {
public:
    ConeCdf(DistributionModel model, ConvexCone cone, int resolution = kDefaultResolution,
            std::optional<bool> exact2d = std::nullopt);
    ConeCdf(DistributionModel model, ConvexCone cone, DirectionSet dirs,
            std::optional<bool> exact2d = std::nullopt);

    static constexpr int kDefaultResolution = 64;

    const DistributionModel& model() const { return model_; }
    const ConvexCone& cone() const { return cone_; }
    const DirectionSet& directions() const { return dirs_; }
    bool exact2d() const { return exact2d_; }
    std::size_t dim() const { return cone_.dim(); }

    // F at one direction of C+ \ {0}: Pr{w.X <= w.z}.
    double directional_cdf(const Vec& w, const Vec& z) const;

    double lower_cdf(const Vec& z) const;
    LowerCdfResult lower_cdf_detail(const Vec& z) const;

    // Total ranking of points by lower_cdf.
    Ordering rank_scalar(const Vec& z1, const Vec& z2, double tol = 0.0) const;

    // Partial ranking: compare the directional cdfs over C+.
    // Exact for empirical d = 2 (sweep over both points' critical
    // directions); otherwise evaluated over the direction set.
    DirectionalComparison rank_directional(const Vec& z1, const Vec& z2,
                                           double tol = 0.0) const;

private:
    DistributionModel model_;
    ConvexCone cone_;
    DirectionSet dirs_;
    bool exact2d_;

    LowerCdfResult lower_cdf_empirical_2d(const Vec& z) const;
    LowerCdfResult lower_cdf_gaussian_2d(const Vec& z) const;
    LowerCdfResult lower_cdf_grid(const Vec& z) const;
};

// Tukey halfspace depth: lower_cdf for the cone {0} (full-sphere scan).
// Requires c.cone() to be the zero cone.
double tukey_depth(const ConeCdf& c, const Vec& z);

}  // namespace coneq
