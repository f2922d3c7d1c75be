#include "coneq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace coneq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Angular tolerance for classifying generator arcs.
constexpr double kAngTol = 1e-9;
// Tolerance for merging candidate angles in sweeps. Kept an order of
// magnitude above the sign-test slack so that midpoints of surviving
// arcs are decided cleanly by direct counts.
constexpr double kMergeTol = 1e-11;

void check_dim(const Vec& v, std::size_t dim, const char* who) {
    if (v.size() != dim) {
        throw_bad_input(std::string(who) + ": expected dimension " + std::to_string(dim) +
                        ", got " + std::to_string(v.size()));
    }
}

Vec rot90(const Vec& v) { return {-v[1], v[0]}; }
Vec rot90cw(const Vec& v) { return {v[1], -v[0]}; }

Vec cross3(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<Vec> unit_basis_pm(std::size_t dim) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim; ++i) {
        Vec e(dim, 0.0);
        e[i] = 1.0;
        out.push_back(e);
        e[i] = -1.0;
        out.push_back(e);
    }
    return out;
}

// Distinct nonzero generator directions, unit length.
std::vector<Vec> distinct_directions(const std::vector<Vec>& generators, double tol) {
    std::vector<Vec> dirs;
    for (const Vec& g : generators) {
        double n = norm(g);
        if (n <= tol) continue;
        Vec u = scaled(g, 1.0 / n);
        bool dup = false;
        for (const Vec& d : dirs) {
            if (dot(d, u) >= 1.0 - 1e-12) {
                dup = true;
                break;
            }
        }
        if (!dup) dirs.push_back(std::move(u));
    }
    return dirs;
}

// Orthonormal basis of the span of the given vectors (Gram-Schmidt).
std::vector<Vec> span_basis(const std::vector<Vec>& vs, double tol) {
    std::vector<Vec> basis;
    for (const Vec& v : vs) {
        Vec r = v;
        for (const Vec& b : basis) {
            double c = dot(r, b);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
        }
        double n = norm(r);
        if (n > tol * (1.0 + norm(v))) basis.push_back(scaled(r, 1.0 / n));
    }
    return basis;
}

std::vector<Vec> dual_generators_1d(const std::vector<Vec>& dirs) {
    bool pos = false, neg = false;
    for (const Vec& d : dirs) (d[0] > 0.0 ? pos : neg) = true;
    if (!pos && !neg) return {{1.0}, {-1.0}};  // dual of {0} is R
    if (pos && neg) return {};                 // dual of R is {0}
    return {Vec{pos ? 1.0 : -1.0}};
}

std::vector<Vec> dual_generators_2d(const std::vector<Vec>& generators, double tol) {
    Arc arc = classify_arc_2d(generators, tol);
    switch (arc.kind) {
        case Arc::Kind::Empty:
            return unit_basis_pm(2);
        case Arc::Kind::Single: {
            Vec u = unit2(arc.lo);
            return {rot90cw(u), u, rot90(u)};  // the closed halfplane {w : u.w >= 0}
        }
        case Arc::Kind::Pair: {
            Vec u = unit2(arc.lo);
            return {rot90(u), rot90cw(u)};  // the orthogonal line
        }
        case Arc::Kind::Interval: {
            double width = arc.hi - arc.lo;
            if (width >= kPi - kAngTol) {
                return {unit2(arc.lo + kPi / 2.0)};  // halfplane cone: dual is a ray
            }
            return {unit2(arc.hi - kPi / 2.0), unit2(arc.lo + kPi / 2.0)};
        }
        case Arc::Kind::FullCircle:
            return {};
    }
    return {};
}

std::vector<Vec> dual_generators_3d(const std::vector<Vec>& generators, double tol) {
    std::vector<Vec> dirs = distinct_directions(generators, tol);
    std::vector<Vec> basis = span_basis(dirs, tol);

    if (basis.empty()) return unit_basis_pm(3);

    if (basis.size() == 1) {
        const Vec& u = basis[0];
        // Complement basis of the orthogonal plane.
        Vec seed(3, 0.0);
        std::size_t k = 0;
        for (std::size_t i = 1; i < 3; ++i)
            if (std::abs(u[i]) < std::abs(u[k])) k = i;
        seed[k] = 1.0;
        Vec v1 = seed;
        double c = dot(v1, u);
        for (std::size_t i = 0; i < 3; ++i) v1[i] -= c * u[i];
        v1 = normalized(v1);
        Vec v2 = cross3(u, v1);
        bool line = false;
        for (const Vec& d : dirs)
            if (dot(d, u) < 0.0) line = true;
        std::vector<Vec> out = {v1, scaled(v1, -1.0), v2, scaled(v2, -1.0)};
        if (!line) out.insert(out.begin(), u);  // ray: dual is the halfspace {w : u.w >= 0}
        return out;
    }

    if (basis.size() == 2) {
        // Planar cone: dual = (in-plane dual) + the normal line.
        const Vec& b1 = basis[0];
        const Vec& b2 = basis[1];
        Vec n = normalized(cross3(b1, b2));
        std::vector<Vec> plane2d;
        plane2d.reserve(dirs.size());
        for (const Vec& d : dirs) plane2d.push_back({dot(d, b1), dot(d, b2)});
        std::vector<Vec> out;
        for (const Vec& w2 : dual_generators_2d(plane2d, tol)) {
            Vec w(3, 0.0);
            for (std::size_t i = 0; i < 3; ++i) w[i] = w2[0] * b1[i] + w2[1] * b2[i];
            out.push_back(normalized(w));
        }
        out.push_back(n);
        out.push_back(scaled(n, -1.0));
        return out;
    }

    // Full-dimensional cone: every extreme ray of C+ is orthogonal to two
    // independent generators, so enumerate signed cross products of pairs
    // and keep the feasible ones. Redundant interior candidates are
    // harmless for membership tests.
    std::vector<Vec> out;
    auto try_candidate = [&](Vec w) {
        double n = norm(w);
        if (n <= tol) return;
        w = scaled(w, 1.0 / n);
        for (const Vec& g : dirs)
            if (dot(w, g) < -tol) return;
        for (const Vec& d : out)
            if (dot(d, w) >= 1.0 - 1e-12) return;
        out.push_back(std::move(w));
    };
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            Vec c = cross3(dirs[i], dirs[j]);
            try_candidate(c);
            try_candidate(scaled(c, -1.0));
        }
    }
    return out;  // empty <=> C = R^3
}

std::vector<Vec> compute_dual_generators(std::size_t dim, const std::vector<Vec>& generators,
                                         double tol) {
    std::vector<Vec> dirs = distinct_directions(generators, tol);
    switch (dim) {
        case 1:
            return dual_generators_1d(dirs);
        case 2:
            return dual_generators_2d(generators, tol);
        case 3:
            return dual_generators_3d(generators, tol);
        default:
            throw_unsupported_dimension(
                "dual cone computation supports d <= 3; supply dual_generators for d = " +
                std::to_string(dim));
    }
}

}  // namespace

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scaled(const Vec& a, double s) {
    Vec r = a;
    for (double& x : r) x *= s;
    return r;
}

Vec normalized(const Vec& a) {
    double n = norm(a);
    if (n == 0.0) throw_bad_input("cannot normalize the zero vector");
    return scaled(a, 1.0 / n);
}

bool all_finite(const Vec& a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

Vec unit2(double theta) { return {std::cos(theta), std::sin(theta)}; }

double angle2(const Vec& v) { return wrap_angle(std::atan2(v[1], v[0])); }

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return t;
}

bool Halfspace::is_whole() const { return offset == -std::numeric_limits<double>::infinity(); }

bool Halfspace::is_empty() const { return offset == std::numeric_limits<double>::infinity(); }

bool Halfspace::contains(const Vec& z, double tol) const {
    if (is_whole()) return true;
    if (is_empty()) return false;
    return dot(normal, z) >= offset - tol;
}

ConvexCone::ConvexCone(std::size_t dim, std::vector<Vec> generators, double tol)
    : dim_(dim), generators_(std::move(generators)), tol_(tol) {
    if (dim_ == 0) throw_bad_input("cone dimension must be >= 1");
    for (const Vec& g : generators_) {
        check_dim(g, dim_, "cone generator");
        if (!all_finite(g)) throw_bad_input("cone generator has non-finite entries");
    }
    dual_generators_ = compute_dual_generators(dim_, generators_, tol_);
}

ConvexCone::ConvexCone(std::size_t dim, std::vector<Vec> generators,
                       std::vector<Vec> dual_generators, double tol)
    : dim_(dim),
      generators_(std::move(generators)),
      dual_generators_(std::move(dual_generators)),
      tol_(tol) {
    if (dim_ == 0) throw_bad_input("cone dimension must be >= 1");
    for (const Vec& g : generators_) {
        check_dim(g, dim_, "cone generator");
        if (!all_finite(g)) throw_bad_input("cone generator has non-finite entries");
    }
    for (const Vec& w : dual_generators_) {
        check_dim(w, dim_, "dual generator");
        if (!all_finite(w)) throw_bad_input("dual generator has non-finite entries");
        for (const Vec& g : generators_) {
            if (dot(w, g) < -tol_ * (1.0 + norm(w) * norm(g))) {
                throw_bad_input("supplied dual generator pairs negatively with a generator");
            }
        }
    }
}

ConvexCone ConvexCone::orthant(std::size_t dim, double tol) {
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < dim; ++i) {
        Vec e(dim, 0.0);
        e[i] = 1.0;
        gens.push_back(e);
    }
    return ConvexCone(dim, gens, gens, tol);  // self-dual
}

ConvexCone ConvexCone::zero(std::size_t dim, double tol) {
    return ConvexCone(dim, {}, unit_basis_pm(dim), tol);
}

ConvexCone ConvexCone::halfspace(const Vec& w, double tol) {
    std::size_t dim = w.size();
    double n = norm(w);
    if (dim == 0 || n <= tol) throw_bad_input("halfspace cone needs a nonzero normal");
    Vec u = scaled(w, 1.0 / n);
    std::vector<Vec> gens = {u};
    // Generators: the normal plus +-(a basis of its orthogonal complement).
    std::vector<Vec> full = {u};
    for (std::size_t i = 0; i < dim; ++i) {
        Vec e(dim, 0.0);
        e[i] = 1.0;
        full.push_back(e);
    }
    std::vector<Vec> basis = span_basis(full, tol);
    for (std::size_t k = 1; k < basis.size(); ++k) {
        gens.push_back(basis[k]);
        gens.push_back(scaled(basis[k], -1.0));
    }
    return ConvexCone(dim, gens, {u}, tol);
}

bool ConvexCone::contains(const Vec& z) const {
    check_dim(z, dim_, "point");
    for (const Vec& w : dual_generators_) {
        if (dot(w, z) < -tol_ * (1.0 + norm(z))) return false;
    }
    return true;
}

bool ConvexCone::leq(const Vec& y, const Vec& z) const { return contains(sub(z, y)); }

bool ConvexCone::in_dual(const Vec& w) const {
    check_dim(w, dim_, "direction");
    for (const Vec& g : generators_) {
        if (dot(w, g) < -tol_ * (1.0 + norm(w) * norm(g))) return false;
    }
    return true;
}

bool ConvexCone::is_zero_cone() const {
    for (const Vec& g : generators_)
        if (norm(g) > tol_) return false;
    return true;
}

bool ConvexCone::is_full_space() const { return dual_generators_.empty(); }

ConvexCone dual_cone(const ConvexCone& cone) {
    return ConvexCone(cone.dim(), cone.dual_generators(), cone.tol());
}

Arc classify_arc_2d(const std::vector<Vec>& generators, double tol) {
    std::vector<Vec> dirs = distinct_directions(generators, tol);
    if (dirs.empty()) return {Arc::Kind::Empty, 0.0, 0.0};
    if (dirs.size() == 1) {
        double a = angle2(dirs[0]);
        return {Arc::Kind::Single, a, a};
    }
    if (dirs.size() == 2) {
        double a = angle2(dirs[0]);
        double b = angle2(dirs[1]);
        double d = wrap_angle(b - a);
        if (std::abs(d - kPi) <= kAngTol) return {Arc::Kind::Pair, std::min(a, b), std::min(a, b) + kPi};
    }
    std::vector<double> angles;
    angles.reserve(dirs.size());
    for (const Vec& d : dirs) angles.push_back(angle2(d));
    std::sort(angles.begin(), angles.end());
    double max_gap = kTwoPi - angles.back() + angles.front();
    std::size_t gap_after = angles.size() - 1;
    for (std::size_t i = 0; i + 1 < angles.size(); ++i) {
        double g = angles[i + 1] - angles[i];
        if (g > max_gap) {
            max_gap = g;
            gap_after = i;
        }
    }
    if (max_gap < kPi - kAngTol) return {Arc::Kind::FullCircle, 0.0, kTwoPi};
    double lo = angles[(gap_after + 1) % angles.size()];
    double width = kTwoPi - max_gap;
    if (width <= kAngTol) return {Arc::Kind::Single, lo, lo};
    return {Arc::Kind::Interval, lo, lo + width};
}

Arc dual_arc(const ConvexCone& cone) {
    if (cone.dim() != 2) throw_bad_config("dual_arc is defined for d = 2 only");
    return classify_arc_2d(cone.dual_generators(), cone.tol());
}

namespace detail {

std::vector<double> candidate_angles(const Arc& arc, std::vector<double> breakpoints) {
    std::vector<double> cands;
    const bool full = arc.kind == Arc::Kind::FullCircle;

    if (arc.kind == Arc::Kind::Single) return {arc.lo};
    if (arc.kind == Arc::Kind::Pair) return {arc.lo, arc.hi};
    if (arc.kind == Arc::Kind::Empty) return {};

    if (full) {
        for (double b : breakpoints) cands.push_back(wrap_angle(b));
        if (cands.empty()) return {0.0};
    } else {
        double width = arc.hi - arc.lo;
        cands.push_back(arc.lo);
        cands.push_back(arc.hi);
        for (double b : breakpoints) {
            double t = wrap_angle(b - arc.lo);
            if (t <= width + kAngTol) cands.push_back(arc.lo + std::min(t, width));
        }
    }
    std::sort(cands.begin(), cands.end());
    std::vector<double> uniq;
    for (double c : cands) {
        if (uniq.empty() || c - uniq.back() > kMergeTol) uniq.push_back(c);
    }
    std::vector<double> out;
    out.reserve(2 * uniq.size());
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        out.push_back(uniq[i]);
        if (i + 1 < uniq.size()) {
            out.push_back(0.5 * (uniq[i] + uniq[i + 1]));
        } else if (full) {
            out.push_back(wrap_angle(0.5 * (uniq.back() + uniq.front() + kTwoPi)));
        }
    }
    return out;
}

}  // namespace detail

DirectionSet direction_base(const ConvexCone& cone, int resolution) {
    if (resolution < 1) throw_bad_config("direction resolution must be >= 1");
    if (cone.is_full_space()) {
        throw_degenerate_cone("C = R^d has dual cone {0}: no directions to scan");
    }

    DirectionSet out;
    out.resolution = resolution;
    out.kind = DirectionSet::Kind::Grid;

    auto push_unique = [&](Vec u) {
        for (const Vec& d : out.dirs)
            if (dot(d, u) >= 1.0 - 1e-12) return;
        out.dirs.push_back(std::move(u));
    };

    const std::size_t d = cone.dim();
    if (d == 1) {
        for (const Vec& w : cone.dual_generators()) {
            if (norm(w) > cone.tol()) push_unique(Vec{w[0] > 0.0 ? 1.0 : -1.0});
        }
        out.kind = DirectionSet::Kind::DualGenerators;
        return out;
    }

    if (d == 2) {
        Arc arc = dual_arc(cone);
        switch (arc.kind) {
            case Arc::Kind::Empty:
                throw_degenerate_cone("dual cone is {0}");
            case Arc::Kind::Single:
                out.dirs.push_back(unit2(arc.lo));
                out.kind = DirectionSet::Kind::DualGenerators;
                return out;
            case Arc::Kind::Pair:
                out.dirs.push_back(unit2(arc.lo));
                out.dirs.push_back(unit2(arc.hi));
                out.kind = DirectionSet::Kind::DualGenerators;
                return out;
            case Arc::Kind::Interval: {
                int n = std::max(resolution, 2);
                for (int k = 0; k < n; ++k) {
                    double t = arc.lo + (arc.hi - arc.lo) * k / (n - 1);
                    push_unique(unit2(t));
                }
                break;
            }
            case Arc::Kind::FullCircle: {
                for (int k = 0; k < resolution; ++k) {
                    push_unique(unit2(kTwoPi * k / resolution));
                }
                break;
            }
        }
        for (const Vec& w : cone.dual_generators()) {
            if (norm(w) > cone.tol()) push_unique(normalized(w));
        }
        return out;
    }

    if (d == 3) {
        // Fibonacci sphere with ~resolution^2 nodes, filtered to C+.
        const int n = std::max(resolution * resolution, 8);
        const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < n; ++k) {
            double z = 1.0 - (2.0 * k + 1.0) / n;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = golden_angle * k;
            Vec w = {r * std::cos(phi), r * std::sin(phi), z};
            if (cone.in_dual(w)) push_unique(std::move(w));
        }
        for (const Vec& w : cone.dual_generators()) {
            if (norm(w) > cone.tol()) push_unique(normalized(w));
        }
        if (out.dirs.empty()) throw_degenerate_cone("dual cone is {0}");
        return out;
    }

    // d >= 4: no grid; fall back to the (possibly user-supplied) dual rays.
    for (const Vec& w : cone.dual_generators()) {
        if (norm(w) > cone.tol()) push_unique(normalized(w));
    }
    out.kind = DirectionSet::Kind::DualGenerators;
    if (out.dirs.empty()) throw_degenerate_cone("dual cone is {0}");
    return out;
}

DirectionSet critical_directions(const ConvexCone& cone, std::span<const Vec> points) {
    if (cone.dim() != 2) throw_bad_config("critical_directions is defined for d = 2 only");
    if (cone.is_full_space()) throw_degenerate_cone("C = R^d has dual cone {0}");

    Arc arc = dual_arc(cone);
    std::vector<double> breaks;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            Vec v = sub(points[i], points[j]);
            double n = norm(v);
            if (n <= cone.tol()) continue;
            double a = angle2(v);
            breaks.push_back(wrap_angle(a + kPi / 2.0));
            breaks.push_back(wrap_angle(a - kPi / 2.0));
        }
    }
    for (const Vec& w : cone.dual_generators()) {
        if (norm(w) > cone.tol()) breaks.push_back(angle2(w));
    }

    DirectionSet out;
    out.kind = DirectionSet::Kind::Exact2dCritical;
    out.resolution = 0;
    for (double t : detail::candidate_angles(arc, std::move(breaks))) {
        out.dirs.push_back(unit2(t));
    }
    return out;
}

}  // namespace coneq
