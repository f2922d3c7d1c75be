#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "coneq/galois.hpp"
#include "coneq/random_set.hpp"

namespace coneq_cli {

using namespace coneq;

namespace {

std::vector<Vec> s4() { return {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}; }

struct Check {
    std::string name;
    std::function<bool()> fn;
};

}  // namespace

bool run_selftest(std::ostream& out) {
    std::vector<Check> checks;

    checks.push_back({"bipolar-orthant-roundtrip", [] {
        ConvexCone c(2, {{1.0, 0.0}, {0.0, 1.0}});
        ConvexCone back = dual_cone(dual_cone(c));
        return back.contains({1.0, 0.0}) && back.contains({0.0, 1.0}) &&
               !back.contains({-1.0, 0.0});
    }});

    checks.push_back({"direction-base-endpoints", [] {
        DirectionSet ds = direction_base(ConvexCone::orthant(2), 3);
        return ds.dirs.size() == 3 && std::abs(ds.dirs[1][0] - std::sqrt(0.5)) < 1e-12;
    }});

    checks.push_back({"univariate-quantile-adjunction", [] {
        DistributionModel m = EmpiricalSample({{1.0}, {2.0}, {3.0}, {4.0}});
        for (int k = 0; k <= 20; ++k) {
            double p = k / 20.0;
            double q = project_quantile(m, {1.0}, p);
            for (double t = 0.0; t <= 5.0; t += 0.25) {
                if ((project_cdf(m, {1.0}, t) >= p) != (t >= q)) return false;
            }
        }
        return true;
    }});

    checks.push_back({"lower-cdf-lattice-values", [] {
        ConeCdf c(EmpiricalSample(s4()), ConvexCone::orthant(2));
        return c.lower_cdf({1.0, 1.0}) == 1.0 && c.lower_cdf({0.0, 0.0}) == 0.25 &&
               c.lower_cdf({1.0, 0.0}) == 0.5;
    }});

    checks.push_back({"tukey-depth-lattice", [] {
        ConeCdf c(EmpiricalSample(s4()), ConvexCone::zero(2), 16);
        return tukey_depth(c, {0.5, 0.5}) == 0.5 && tukey_depth(c, {10.0, 10.0}) == 0.0;
    }});

    checks.push_back({"monotone-under-cone-order", [] {
        ConeCdf c(EmpiricalSample(s4()), ConvexCone::orthant(2));
        for (double x = -0.5; x <= 1.5; x += 0.25) {
            for (double y = -0.5; y <= 1.5; y += 0.25) {
                if (c.lower_cdf({x, y}) > c.lower_cdf({x + 0.3, y + 0.4})) return false;
            }
        }
        return true;
    }});

    checks.push_back({"quantile-region-nestedness", [] {
        QuantileFn q(ConeCdf(EmpiricalSample(s4()), ConvexCone::orthant(2)));
        for (double x = -0.5; x <= 2.0; x += 0.25) {
            for (double y = -0.5; y <= 2.0; y += 0.25) {
                bool prev = true;
                for (double p : {0.2, 0.4, 0.6, 0.8, 1.0}) {
                    bool now = q.member(p, {x, y});
                    if (now && !prev) return false;
                    prev = now;
                }
            }
        }
        return true;
    }});

    checks.push_back({"dual-route-agreement", [] {
        QuantileFn q(ConeCdf(EmpiricalSample(s4()), ConvexCone::orthant(2)));
        for (double p : {0.25, 0.5, 0.75}) {
            Region a = q.lower_quantile(p);
            Region b = q.dual_quantile(p);
            for (double x = -0.5; x <= 2.0; x += 0.125) {
                for (double y = -0.5; y <= 2.0; y += 0.125) {
                    if (region_member(a, {x, y}) != region_member(b, {x, y})) return false;
                }
            }
        }
        return true;
    }});

    checks.push_back({"galois-adjunction", [] {
        QuantileFn q(ConeCdf(EmpiricalSample(s4()), ConvexCone::orthant(2)));
        for (const GeneratorSet& g :
             {GeneratorSet{{{1.0, 1.0}}}, GeneratorSet{{{0.0, 0.0}, {1.0, 1.0}}},
              GeneratorSet{{{0.5, 0.25}, {0.25, 0.5}}}}) {
            for (int k = 0; k <= 20; ++k) {
                auto r = adjunction_check(q, k / 20.0, g);
                if (r.region_covers != r.level_leq) return false;
            }
        }
        return true;
    }});

    checks.push_back({"closure-extensive-idempotent", [] {
        ConvexCone orthant = ConvexCone::orthant(2);
        auto pts = s4();
        DirectionSet crit = critical_directions(orthant, pts);
        QuantileFn q(ConeCdf(EmpiricalSample(pts), orthant, crit));
        GeneratorSet g{{{0.5, 0.5}}};
        double v = inf_extension(q.cdf(), g);
        if (!q.member(v, {0.5, 0.5})) return false;  // extensive
        Region cl = scalar_closure(q, g);
        auto corners = region_corners_2d(cl, BBox{{-8.0, -8.0}, {8.0, 8.0}});
        if (corners.empty()) return false;
        double v2 = inf_extension(q.cdf(), GeneratorSet{corners});
        for (double x = -0.5; x <= 2.0; x += 0.25) {
            for (double y = -0.5; y <= 2.0; y += 0.25) {
                if (q.member(v, {x, y}) != q.member(v2, {x, y})) return false;
            }
        }
        return true;
    }});

    checks.push_back({"inf-stability", [] {
        ConeCdf c(EmpiricalSample(s4()), ConvexCone::orthant(2));
        GeneratorSet a{{{0.0, 0.0}}};
        GeneratorSet b{{{1.0, 1.0}, {0.5, 0.5}}};
        GeneratorSet both{{{0.0, 0.0}, {1.0, 1.0}, {0.5, 0.5}}};
        return inf_extension(c, both) == std::min(inf_extension(c, a), inf_extension(c, b));
    }});

    checks.push_back({"capacity-identity", [] {
        QuantileFn q(ConeCdf(EmpiricalSample(s4()), ConvexCone::orthant(2)));
        CompactTestSet k = make_test_set({{0.0, 0.0}, {0.7, 0.7}});
        double cap = capacity_exact(q.cdf(), k);
        SeededRng rng(5);
        for (int i = 0; i < 200; ++i) {
            double u = rng.next_unit();
            if (hits(q, u, k) != (u <= cap)) return false;
        }
        return true;
    }});

    checks.push_back({"capacity-mc-concentration", [] {
        QuantileFn q(ConeCdf(EmpiricalSample(s4()), ConvexCone::orthant(2)));
        CapacityEstimate est = capacity_mc(q, make_test_set({{0.0, 0.0}}), 20000, SeededRng(17));
        return std::abs(est.mc_estimate - est.exact) <= 3.0 * est.std_error;
    }});

    checks.push_back({"gaussian-median-halfspace", [] {
        QuantileFn q(ConeCdf(GaussianModel({0.0, 0.0}, {{1.0, 0.0}, {0.0, 1.0}}),
                             ConvexCone::orthant(2), 65));
        Halfspace h = q.direction_halfspace({1.0, 0.0}, 0.5);
        return std::abs(h.offset) < 1e-12 &&
               std::abs(q.cdf().lower_cdf({0.0, 0.0}) - 0.5) < 1e-9;
    }});

    bool all = true;
    for (const Check& c : checks) {
        bool ok = false;
        try {
            ok = c.fn();
        } catch (...) {
            ok = false;
        }
        out << (ok ? "PASS " : "FAIL ") << c.name << "\n";
        all = all && ok;
    }
    out << (all ? "selftest: all properties passed" : "selftest: FAILURES present") << "\n";
    return all;
}

}  // namespace coneq_cli
