#include "coneq/galois.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace coneq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double min_projection(const Vec& w, const GeneratorSet& g) {
    double m = kInf;
    for (const Vec& p : g.points) m = std::min(m, dot(w, p));
    return m;
}

}  // namespace

Region genset_region(const ConvexCone& cone, const GeneratorSet& g) {
    return Region::genrep(cone, g.points);
}

double inf_extension(const ConeCdf& c, const GeneratorSet& g) {
    if (g.empty()) return kInf;
    double m = kInf;
    for (const Vec& p : g.points) m = std::min(m, c.lower_cdf(p));
    return m;
}

double inf_extension_dir(const ConeCdf& c, const Vec& w, const GeneratorSet& g) {
    if (g.empty()) return kInf;
    if (norm(w) == 0.0) throw_invalid_direction("direction w must be nonzero");
    if (!c.cone().in_dual(w)) throw_invalid_direction("direction lies outside the dual cone");
    return project_cdf(c.model(), w, min_projection(w, g));
}

AdjunctionCheck adjunction_check(const QuantileFn& q, double p, const GeneratorSet& g) {
    AdjunctionCheck out;
    out.value = inf_extension(q.cdf(), g);
    out.level_leq = p <= out.value;
    out.region_covers = true;
    for (const Vec& z : g.points) {
        if (!q.member(p, z)) {
            out.region_covers = false;
            break;
        }
    }
    return out;
}

Region scalar_closure(const QuantileFn& q, const GeneratorSet& g) {
    if (g.empty()) throw_bad_input("closure of the empty generator set is not defined");
    return q.lower_quantile(inf_extension(q.cdf(), g));
}

Region directional_closure(const ConeCdf& c, const GeneratorSet& g) {
    if (g.empty()) throw_bad_input("closure of the empty generator set is not defined");
    std::vector<Halfspace> hs;
    hs.reserve(c.directions().dirs.size());
    for (const Vec& w : c.directions().dirs) {
        double level = project_cdf(c.model(), w, min_projection(w, g));
        hs.push_back(Halfspace{w, project_quantile(c.model(), w, level)});
    }
    return Region::hrep(c.cone(), std::move(hs));
}

Ordering rank_sets_scalar(const ConeCdf& c, const GeneratorSet& g1, const GeneratorSet& g2,
                          double tol) {
    double a = inf_extension(c, g1);
    double b = inf_extension(c, g2);
    if (a == b || std::abs(a - b) <= tol) return Ordering::Equal;
    return a < b ? Ordering::Less : Ordering::Greater;
}

DirectionalComparison rank_sets_directional(const ConeCdf& c, const GeneratorSet& g1,
                                            const GeneratorSet& g2, double tol) {
    DirectionalComparison cmp{true, true};
    if (g1.empty() && g2.empty()) return cmp;

    auto fold_at = [&](const Vec& w) {
        double a = g1.empty() ? kInf : project_cdf(c.model(), w, min_projection(w, g1));
        double b = g2.empty() ? kInf : project_cdf(c.model(), w, min_projection(w, g2));
        if (a > b + tol) cmp.le = false;
        if (b > a + tol) cmp.ge = false;
    };

    const bool exact = c.exact2d();
    if (exact) {
        // Breakpoints of theta -> F(theta-projection minimum of G): the
        // quantile-count flips (perpendiculars to x_i - g) and the argmin
        // generator switches (perpendiculars to g - g'), for both sets.
        const auto& s = std::get<EmpiricalSample>(c.model());
        std::vector<double> breaks;
        auto add_perp = [&](const Vec& a, const Vec& b) {
            Vec v = sub(a, b);
            double n = norm(v);
            if (n <= c.cone().tol()) return;
            double ang = angle2(v);
            breaks.push_back(wrap_angle(ang + kPi / 2.0));
            breaks.push_back(wrap_angle(ang - kPi / 2.0));
        };
        for (const GeneratorSet* g : {&g1, &g2}) {
            for (std::size_t i = 0; i < g->points.size(); ++i) {
                for (std::size_t j = i + 1; j < g->points.size(); ++j) {
                    add_perp(g->points[i], g->points[j]);
                }
                for (const Vec& x : s.points()) add_perp(x, g->points[i]);
            }
        }
        Arc arc = dual_arc(c.cone());
        for (double theta : detail::candidate_angles(arc, std::move(breaks))) {
            fold_at(unit2(theta));
            if (!cmp.le && !cmp.ge) return cmp;
        }
        return cmp;
    }

    for (const Vec& w : c.directions().dirs) {
        fold_at(w);
        if (!cmp.le && !cmp.ge) return cmp;
    }
    return cmp;
}

std::vector<Vec> ProbeGrid::points() const {
    const std::size_t d = box.lo.size();
    std::vector<Vec> out;
    if (per_axis < 1) return out;
    std::vector<int> idx(d, 0);
    while (true) {
        Vec p(d);
        for (std::size_t k = 0; k < d; ++k) {
            double t = per_axis == 1 ? 0.5 : static_cast<double>(idx[k]) / (per_axis - 1);
            p[k] = box.lo[k] + t * (box.hi[k] - box.lo[k]);
        }
        out.push_back(std::move(p));
        std::size_t k = 0;
        while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
        if (k == d) break;
    }
    return out;
}

ProbeGrid default_probe_grid(const DistributionModel& model, int per_axis, double inflate) {
    const std::size_t d = model_dim(model);
    Vec lo(d), hi(d);
    if (const auto* s = std::get_if<EmpiricalSample>(&model)) {
        lo = hi = s->points()[0];
        for (const Vec& x : s->points()) {
            for (std::size_t k = 0; k < d; ++k) {
                lo[k] = std::min(lo[k], x[k]);
                hi[k] = std::max(hi[k], x[k]);
            }
        }
    } else {
        const auto& g = std::get<GaussianModel>(model);
        for (std::size_t k = 0; k < d; ++k) {
            double sd = std::sqrt(std::max(0.0, g.sigma()[k][k]));
            lo[k] = g.mu()[k] - 3.0 * sd;
            hi[k] = g.mu()[k] + 3.0 * sd;
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        double half = 0.5 * (hi[k] - lo[k]);
        double mid = 0.5 * (hi[k] + lo[k]);
        double h = (half > 0.0 ? half : 1.0) * (1.0 + inflate);
        lo[k] = mid - h;
        hi[k] = mid + h;
    }
    return ProbeGrid{BBox{std::move(lo), std::move(hi)}, per_axis};
}

bool is_fixed_point(const QuantileFn& q, const GeneratorSet& g, const ProbeGrid& probes) {
    if (g.empty()) throw_bad_input("fixed-point check needs a nonempty generator set");
    double value = inf_extension(q.cdf(), g);
    Region d = genset_region(q.cone(), g);
    for (const Vec& z : probes.points()) {
        // The closure is extensive, so only closure \ D can witness.
        if (q.member(value, z) && !region_member(d, z)) return false;
    }
    return true;
}

ClosureReport closure_report(const QuantileFn& q, const GeneratorSet& g, const ProbeGrid& probes) {
    double value = inf_extension(q.cdf(), g);
    Region scalar = scalar_closure(q, g);
    Region directional = directional_closure(q.cdf(), g);
    bool scalar_fixed = is_fixed_point(q, g, probes);

    bool directional_fixed = true;
    Region d = genset_region(q.cone(), g);
    for (const Vec& z : probes.points()) {
        if (region_member(directional, z) && !region_member(d, z)) {
            directional_fixed = false;
            break;
        }
    }
    return ClosureReport{g,      value,        std::move(scalar), std::move(directional),
                         scalar_fixed, directional_fixed};
}

IdentityScanReport directional_identity_scan(const ConeCdf& c, int trials,
                                             const ProbeGrid& probes, SeededRng& rng,
                                             double margin) {
    if (trials < 1) throw_bad_config("identity scan needs at least one trial");

    if (margin < 0.0) {
        // Worst angular gap of the direction set, then margin = 2 R gap.
        std::vector<double> angles;
        for (const Vec& w : c.directions().dirs) {
            if (w.size() == 2) angles.push_back(angle2(w));
        }
        double gap = 0.0;
        if (angles.size() >= 2) {
            std::sort(angles.begin(), angles.end());
            for (std::size_t i = 0; i + 1 < angles.size(); ++i) {
                gap = std::max(gap, angles[i + 1] - angles[i]);
            }
        } else {
            gap = 0.0;
        }
        double radius = 0.0;
        for (std::size_t k = 0; k < probes.box.lo.size(); ++k) {
            radius = std::max(radius, std::max(std::abs(probes.box.lo[k]), std::abs(probes.box.hi[k])));
        }
        margin = 2.0 * radius * gap + 1e-9;
    }

    IdentityScanReport rep;
    rep.trials = trials;
    rep.margin = margin;
    const std::vector<Vec> grid = probes.points();
    const std::size_t d = probes.box.lo.size();

    for (int t = 0; t < trials; ++t) {
        GeneratorSet g;
        int npts = 1 + static_cast<int>(rng.next_u64() % 5);
        for (int i = 0; i < npts; ++i) {
            Vec p(d);
            for (std::size_t k = 0; k < d; ++k) {
                p[k] = probes.box.lo[k] + rng.next_unit() * (probes.box.hi[k] - probes.box.lo[k]);
            }
            g.points.push_back(std::move(p));
        }
        Region closure = directional_closure(c, g);
        Region dreg = genset_region(c.cone(), g);
        for (const Vec& z : grid) {
            ++rep.probes;
            double clearance;
            if (closure.kind() == Region::Kind::Whole) {
                clearance = kInf;  // flat directional cdf: the closure blew up
            } else if (closure.kind() == Region::Kind::HRep) {
                clearance = kInf;
                for (const Halfspace& h : closure.halfspaces()) {
                    clearance = std::min(clearance, dot(h.normal, z) - h.offset);
                }
            } else {
                continue;
            }
            if (clearance < margin) continue;
            if (!region_member(dreg, z)) {
                ++rep.violations;
                rep.worst_excess = std::max(rep.worst_excess, clearance);
            }
        }
    }
    return rep;
}

}  // namespace coneq
