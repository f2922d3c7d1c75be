#pragma once

#include <vector>

#include "coneq/cone_cdf.hpp"
#include "coneq/geometry.hpp"

namespace coneq {

// Element of the lattice of closed convex sets stable under + C.
// Either the whole space, the empty set, an intersection of halfspaces
// with normals in C+ \ {0}, or cl co(G + C) for a finite point set G.
class Region {
public:
    enum class Kind { Whole, Empty, HRep, GenRep };

    static Region whole(ConvexCone cone);
    static Region empty(ConvexCone cone);
    // Normalizes: whole-space halfspaces are dropped, an empty halfspace
    // collapses the region, an empty list means the whole space.
    static Region hrep(ConvexCone cone, std::vector<Halfspace> halfspaces);
    static Region genrep(ConvexCone cone, std::vector<Vec> generators);

    Kind kind() const { return kind_; }
    const ConvexCone& cone() const { return cone_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    const std::vector<Vec>& generators() const { return generators_; }

private:
    explicit Region(ConvexCone cone) : cone_(std::move(cone)) {}
    Kind kind_ = Kind::Whole;
    ConvexCone cone_;
    std::vector<Halfspace> halfspaces_;
    std::vector<Vec> generators_;
};

// Membership test. HRep: all halfspace tests within tol. GenRep: exact
// feasibility of z in co(G) + C by a phase-I simplex over the convex
// weights and cone coefficients.
bool region_member(const Region& r, const Vec& z, double tol = kDefaultTol);

struct BBox {
    Vec lo, hi;
};

// Clipped polygon of r within the box (d = 2), counterclockwise.
// Whole -> the box; Empty or no area -> empty polygon.
std::vector<Vec> vertices_2d(const Region& r, const BBox& box);

// d = 2: vertices of an hrep region that lie strictly inside the given
// clip box, i.e. the corner points of the region itself. Together with
// the cone they regenerate the region when the hrep was built over
// critical directions.
std::vector<Vec> region_corners_2d(const Region& r, const BBox& clip_box);

// The set-valued quantile map of a lower C-distribution function.
class QuantileFn {
public:
    explicit QuantileFn(ConeCdf cdf) : cdf_(std::move(cdf)) {}

    const ConeCdf& cdf() const { return cdf_; }
    const ConvexCone& cone() const { return cdf_.cone(); }

    // {z : w.z >= q_w(p)} for one direction of C+ \ {0}.
    Halfspace direction_halfspace(const Vec& w, double p) const;

    // Intersection of direction halfspaces over the direction set. With
    // finitely many directions this is an outer approximation of the true
    // region; membership queries should use member() instead.
    Region lower_quantile(double p) const;

    // Exact membership: lower_cdf(z) >= p.
    bool member(double p, const Vec& z) const;

    // The same region through the dual route: thresholds are computed
    // from the strict cdf as sup{r : Pr{w.X < r} < p}.
    Region dual_quantile(double p) const;

private:
    ConeCdf cdf_;
};

namespace detail {
// Feasibility of  A x = b, x >= 0  via a phase-I simplex with Bland's
// rule. A is row-major, dimensions rows x cols.
bool simplex_feasible(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                      double tol);
}  // namespace detail

}  // namespace coneq
