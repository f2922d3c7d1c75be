#include "coneq/cone_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace coneq {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative slack for the sign test w.(x - z) <= 0 at critical directions,
// where the product carries rounding dust but the weak inequality must
// keep the point counted.
constexpr double kSignSlack = 1e-12;

struct Offset2 {
    double x, y;
    double slack;
};

// Direct count of Pr{w(theta).(X - z) <= 0} for precomputed offsets.
double count_at(const EmpiricalSample& s, const std::vector<Offset2>& v, double theta) {
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    if (s.uniform()) {
        std::size_t count = 0;
        for (const Offset2& o : v) count += (c * o.x + sn * o.y <= o.slack);
        return static_cast<double>(count) / static_cast<double>(v.size());
    }
    double total = 0.0;
    const auto& w = s.weights();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (c * v[i].x + sn * v[i].y <= v[i].slack) total += w[i];
    }
    return total;
}

}  // namespace

ConeCdf::ConeCdf(DistributionModel model, ConvexCone cone, int resolution,
                 std::optional<bool> exact2d)
    : ConeCdf(std::move(model), cone, direction_base(cone, resolution), exact2d) {}

ConeCdf::ConeCdf(DistributionModel model, ConvexCone cone, DirectionSet dirs,
                 std::optional<bool> exact2d)
    : model_(std::move(model)), cone_(std::move(cone)), dirs_(std::move(dirs)) {
    if (model_dim(model_) != cone_.dim()) {
        throw_bad_config("model dimension and cone dimension disagree");
    }
    if (cone_.is_full_space()) {
        throw_degenerate_cone("C = R^d: the lower distribution function is undefined");
    }
    if (dirs_.dirs.empty()) throw_bad_config("direction set is empty");
    for (const Vec& w : dirs_.dirs) {
        if (!cone_.in_dual(w)) throw_bad_config("direction set leaves the dual cone");
    }
    const bool eligible =
        std::holds_alternative<EmpiricalSample>(model_) && cone_.dim() == 2;
    exact2d_ = exact2d.value_or(eligible);
    if (exact2d_ && !eligible) {
        throw_bad_config("exact2d requires an empirical model in dimension 2");
    }
}

double ConeCdf::directional_cdf(const Vec& w, const Vec& z) const {
    if (norm(w) == 0.0) throw_invalid_direction("direction w must be nonzero");
    if (!cone_.in_dual(w)) {
        throw_invalid_direction("direction lies outside the dual cone");
    }
    return project_cdf(model_, w, dot(w, z));
}

LowerCdfResult ConeCdf::lower_cdf_grid(const Vec& z) const {
    LowerCdfResult best;
    best.value = 2.0;
    for (const Vec& w : dirs_.dirs) {
        double v = project_cdf(model_, w, dot(w, z));
        if (v < best.value) {
            best.value = v;
            best.argmin = w;
        }
    }
    return best;
}

LowerCdfResult ConeCdf::lower_cdf_empirical_2d(const Vec& z) const {
    const auto& s = std::get<EmpiricalSample>(model_);
    Arc arc = dual_arc(cone_);

    std::vector<Offset2> v;
    v.reserve(s.size());
    std::vector<double> breaks;
    for (const Vec& x : s.points()) {
        Offset2 o;
        o.x = x[0] - z[0];
        o.y = x[1] - z[1];
        double n = std::hypot(o.x, o.y);
        o.slack = kSignSlack * n;
        v.push_back(o);
        if (n > 0.0) {
            double a = wrap_angle(std::atan2(o.y, o.x));
            breaks.push_back(wrap_angle(a + kPi / 2.0));
            breaks.push_back(wrap_angle(a - kPi / 2.0));
        }
    }

    LowerCdfResult best;
    best.value = 2.0;
    for (double theta : detail::candidate_angles(arc, std::move(breaks))) {
        double val = count_at(s, v, theta);
        if (val < best.value) {
            best.value = val;
            best.argmin = unit2(theta);
        }
    }
    return best;
}

LowerCdfResult ConeCdf::lower_cdf_gaussian_2d(const Vec& z) const {
    LowerCdfResult best = lower_cdf_grid(z);
    Arc arc = dual_arc(cone_);
    if (arc.kind != Arc::Kind::Interval && arc.kind != Arc::Kind::FullCircle) {
        return best;  // finitely many directions, already exact
    }

    auto eval = [&](double theta) { return project_cdf(model_, unit2(theta), dot(unit2(theta), z)); };

    // Window of one grid spacing around the grid argmin.
    double t0 = wrap_angle(std::atan2(best.argmin[1], best.argmin[0]));
    double spacing;
    double lo, hi;
    if (arc.kind == Arc::Kind::FullCircle) {
        spacing = 2.0 * kPi / std::max<std::size_t>(dirs_.dirs.size(), 1);
        lo = t0 - spacing;
        hi = t0 + spacing;
    } else {
        spacing = (arc.hi - arc.lo) / std::max<std::size_t>(dirs_.dirs.size() - 1, 1);
        double t = t0;
        if (t < arc.lo) t += 2.0 * kPi;  // unwrap into the arc frame
        lo = std::max(arc.lo, t - spacing);
        hi = std::min(arc.hi, t + spacing);
    }

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = eval(x1), f2 = eval(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = eval(x2);
        }
    }
    double tm = 0.5 * (a + b);
    double fm = eval(tm);
    if (fm < best.value) {
        best.value = fm;
        best.argmin = unit2(wrap_angle(tm));
    }
    return best;
}

LowerCdfResult ConeCdf::lower_cdf_detail(const Vec& z) const {
    if (z.size() != cone_.dim()) throw_bad_input("query point dimension mismatch");
    if (!all_finite(z)) throw_bad_input("query point has non-finite coordinates");
    if (cone_.dim() == 2) {
        if (exact2d_) return lower_cdf_empirical_2d(z);
        if (std::holds_alternative<GaussianModel>(model_)) return lower_cdf_gaussian_2d(z);
    }
    return lower_cdf_grid(z);
}

double ConeCdf::lower_cdf(const Vec& z) const { return lower_cdf_detail(z).value; }

Ordering ConeCdf::rank_scalar(const Vec& z1, const Vec& z2, double tol) const {
    double a = lower_cdf(z1);
    double b = lower_cdf(z2);
    if (std::abs(a - b) <= tol) return Ordering::Equal;
    return a < b ? Ordering::Less : Ordering::Greater;
}

DirectionalComparison ConeCdf::rank_directional(const Vec& z1, const Vec& z2, double tol) const {
    DirectionalComparison cmp{true, true};
    auto fold = [&](double a, double b) {
        if (a > b + tol) cmp.le = false;
        if (b > a + tol) cmp.ge = false;
    };

    if (exact2d_) {
        // Breakpoints of theta -> F(theta, z1) and theta -> F(theta, z2)
        // are the perpendiculars to x_i - z1 and x_i - z2; comparing at
        // all of them plus midpoints decides the order over all of C+.
        const auto& s = std::get<EmpiricalSample>(model_);
        Arc arc = dual_arc(cone_);
        std::vector<Offset2> v1, v2;
        std::vector<double> breaks;
        for (const Vec* zp : {&z1, &z2}) {
            for (const Vec& x : s.points()) {
                Offset2 o;
                o.x = x[0] - (*zp)[0];
                o.y = x[1] - (*zp)[1];
                double n = std::hypot(o.x, o.y);
                o.slack = kSignSlack * n;
                (zp == &z1 ? v1 : v2).push_back(o);
                if (n > 0.0) {
                    double a = wrap_angle(std::atan2(o.y, o.x));
                    breaks.push_back(wrap_angle(a + kPi / 2.0));
                    breaks.push_back(wrap_angle(a - kPi / 2.0));
                }
            }
        }
        for (double theta : detail::candidate_angles(arc, std::move(breaks))) {
            fold(count_at(s, v1, theta), count_at(s, v2, theta));
            if (!cmp.le && !cmp.ge) break;
        }
        return cmp;
    }

    for (const Vec& w : dirs_.dirs) {
        fold(project_cdf(model_, w, dot(w, z1)), project_cdf(model_, w, dot(w, z2)));
        if (!cmp.le && !cmp.ge) break;
    }
    return cmp;
}

double tukey_depth(const ConeCdf& c, const Vec& z) {
    if (!c.cone().is_zero_cone()) {
        throw_bad_config("tukey_depth requires the zero cone (full-sphere scan)");
    }
    return c.lower_cdf(z);
}

}  // namespace coneq
