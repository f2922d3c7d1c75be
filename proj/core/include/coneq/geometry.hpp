#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coneq/error.hpp"

namespace coneq {

// Global tolerance for geometric sign tests. Configurable per cone.
inline constexpr double kDefaultTol = 1e-9;

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
Vec normalized(const Vec& a);
bool all_finite(const Vec& a);

// Unit vector at angle theta (d = 2).
Vec unit2(double theta);
// Angle of a nonzero 2-vector, wrapped to [0, 2*pi).
double angle2(const Vec& v);
double wrap_angle(double theta);

// {z : normal.z >= offset}. offset = -inf encodes R^d, +inf encodes the
// empty set; the normal is unit length otherwise.
struct Halfspace {
    Vec normal;
    double offset = 0.0;

    bool is_whole() const;
    bool is_empty() const;
    bool contains(const Vec& z, double tol = kDefaultTol) const;
};

// Closed convex polyhedral cone given by finitely many generators, with
// cached dual-cone generators. Automatic dual computation covers d <= 3;
// higher dimensions require user-supplied dual generators. Immutable.
class ConvexCone {
public:
    ConvexCone(std::size_t dim, std::vector<Vec> generators, double tol = kDefaultTol);
    ConvexCone(std::size_t dim, std::vector<Vec> generators, std::vector<Vec> dual_generators,
               double tol = kDefaultTol);

    static ConvexCone orthant(std::size_t dim, double tol = kDefaultTol);
    static ConvexCone zero(std::size_t dim, double tol = kDefaultTol);
    // H+(w) = {z : w.z >= 0} for w != 0.
    static ConvexCone halfspace(const Vec& w, double tol = kDefaultTol);

    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& generators() const { return generators_; }
    const std::vector<Vec>& dual_generators() const { return dual_generators_; }
    double tol() const { return tol_; }

    // z in C, decided through the dual generators.
    bool contains(const Vec& z) const;
    // y <=_C z, i.e. z - y in C.
    bool leq(const Vec& y, const Vec& z) const;
    // w in C+, decided through the generators.
    bool in_dual(const Vec& w) const;

    bool is_zero_cone() const;   // no nonzero generators
    bool is_full_space() const;  // dual cone is {0}

private:
    std::size_t dim_;
    std::vector<Vec> generators_;
    std::vector<Vec> dual_generators_;
    double tol_;
};

// Fresh generator cone over the cached dual generators. Recomputes the
// dual of the dual, so round-trips exercise the computation.
ConvexCone dual_cone(const ConvexCone& cone);

// The set of unit directions of a cone in d = 2, as an arc of the circle.
struct Arc {
    enum class Kind {
        Empty,       // zero cone
        Single,      // one ray
        Pair,        // a line: lo and lo + pi
        Interval,    // sector [lo, hi], 0 < hi - lo <= pi
        FullCircle,  // the whole plane
    };
    Kind kind = Kind::Empty;
    double lo = 0.0;
    double hi = 0.0;
};

// Classify the cone spanned by 2-d generators as an arc of directions.
Arc classify_arc_2d(const std::vector<Vec>& generators, double tol = kDefaultTol);

// Arc of C+ for a 2-d cone (classification of the dual generators).
Arc dual_arc(const ConvexCone& cone);

struct DirectionSet {
    enum class Kind { Exact2dCritical, Grid, DualGenerators };
    std::vector<Vec> dirs;
    int resolution = 0;
    Kind kind = Kind::Grid;
};

// Finite base of C+ \ {0} on the unit sphere. Deterministic for fixed
// inputs; dual generators are always included. d = 2 uses a uniform
// angular grid over the dual arc, d = 3 a Fibonacci sphere grid filtered
// to C+. Throws DegenerateCone when C = R^d.
DirectionSet direction_base(const ConvexCone& cone, int resolution);

// d = 2 only: dual-arc directions at which any empirical statistic built
// from pairwise point differences can change, i.e. both rotations of every
// perpendicular to p_i - p_j, plus arc endpoints and midpoints of
// consecutive candidates. Regions intersected over this set are exact for
// the given points.
DirectionSet critical_directions(const ConvexCone& cone, std::span<const Vec> points);

namespace detail {
// Candidate angles (sorted, deduplicated, with midpoints inserted) covering
// a piecewise-constant function of the direction whose breakpoints are the
// given angles, restricted to the arc.
std::vector<double> candidate_angles(const Arc& arc, std::vector<double> breakpoints);
}  // namespace detail

}  // namespace coneq
