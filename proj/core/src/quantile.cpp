#include "coneq/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coneq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Region Region::whole(ConvexCone cone) {
    Region r(std::move(cone));
    r.kind_ = Kind::Whole;
    return r;
}

Region Region::empty(ConvexCone cone) {
    Region r(std::move(cone));
    r.kind_ = Kind::Empty;
    return r;
}

Region Region::hrep(ConvexCone cone, std::vector<Halfspace> halfspaces) {
    Region r(std::move(cone));
    r.kind_ = Kind::HRep;
    for (Halfspace& h : halfspaces) {
        if (h.is_empty()) {
            r.kind_ = Kind::Empty;
            r.halfspaces_.clear();
            return r;
        }
        if (h.is_whole()) continue;
        if (h.normal.size() != r.cone_.dim()) throw_bad_input("halfspace dimension mismatch");
        if (!r.cone_.in_dual(h.normal)) {
            throw_invalid_direction("halfspace normal lies outside the dual cone");
        }
        r.halfspaces_.push_back(std::move(h));
    }
    if (r.halfspaces_.empty()) r.kind_ = Kind::Whole;
    return r;
}

Region Region::genrep(ConvexCone cone, std::vector<Vec> generators) {
    Region r(std::move(cone));
    if (generators.empty()) {
        r.kind_ = Kind::Empty;
        return r;
    }
    r.kind_ = Kind::GenRep;
    for (const Vec& g : generators) {
        if (g.size() != r.cone_.dim()) throw_bad_input("generator dimension mismatch");
        if (!all_finite(g)) throw_bad_input("generator has non-finite coordinates");
    }
    r.generators_ = std::move(generators);
    return r;
}

bool region_member(const Region& r, const Vec& z, double tol) {
    switch (r.kind()) {
        case Region::Kind::Whole:
            return true;
        case Region::Kind::Empty:
            return false;
        case Region::Kind::HRep: {
            for (const Halfspace& h : r.halfspaces()) {
                if (!h.contains(z, tol)) return false;
            }
            return true;
        }
        case Region::Kind::GenRep: {
            // z = sum over G of lambda_i g_i + sum over cone gens of mu_j c_j,
            // lambda >= 0, mu >= 0, sum lambda = 1.
            const auto& gens = r.generators();
            std::vector<Vec> cgens;
            for (const Vec& c : r.cone().generators()) {
                if (norm(c) > r.cone().tol()) cgens.push_back(c);
            }
            const std::size_t d = r.cone().dim();
            const std::size_t cols = gens.size() + cgens.size();
            std::vector<std::vector<double>> a(d + 1, std::vector<double>(cols, 0.0));
            std::vector<double> b(d + 1, 0.0);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < gens.size(); ++j) a[i][j] = gens[j][i];
                for (std::size_t j = 0; j < cgens.size(); ++j) a[i][gens.size() + j] = cgens[j][i];
                b[i] = z[i];
            }
            for (std::size_t j = 0; j < gens.size(); ++j) a[d][j] = 1.0;
            b[d] = 1.0;
            double scale = 1.0;
            for (double v : z) scale = std::max(scale, std::abs(v));
            return detail::simplex_feasible(a, b, tol * scale);
        }
    }
    return false;
}

std::vector<Vec> vertices_2d(const Region& r, const BBox& box) {
    if (r.cone().dim() != 2) throw_bad_config("vertices_2d requires d = 2");
    if (r.kind() == Region::Kind::Empty) return {};
    if (r.kind() == Region::Kind::GenRep) {
        throw_bad_config("vertices_2d expects an hrep (or whole) region");
    }

    std::vector<Vec> poly = {{box.lo[0], box.lo[1]},
                             {box.hi[0], box.lo[1]},
                             {box.hi[0], box.hi[1]},
                             {box.lo[0], box.hi[1]}};
    if (r.kind() == Region::Kind::Whole) return poly;

    for (const Halfspace& h : r.halfspaces()) {
        std::vector<Vec> next;
        const std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec& p = poly[i];
            const Vec& q = poly[(i + 1) % n];
            double fp = dot(h.normal, p) - h.offset;
            double fq = dot(h.normal, q) - h.offset;
            if (fp >= 0.0) next.push_back(p);
            if ((fp < 0.0) != (fq < 0.0)) {
                double t = fp / (fp - fq);
                next.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
            }
        }
        poly = std::move(next);
        if (poly.empty()) return {};
    }

    // Drop consecutive near-duplicates left by tangent clips.
    std::vector<Vec> out;
    for (const Vec& p : poly) {
        if (out.empty() || norm(sub(p, out.back())) > 1e-12) out.push_back(p);
    }
    if (out.size() >= 2 && norm(sub(out.front(), out.back())) <= 1e-12) out.pop_back();
    if (out.size() < 3) return {};
    return out;
}

std::vector<Vec> region_corners_2d(const Region& r, const BBox& clip_box) {
    std::vector<Vec> poly = vertices_2d(r, clip_box);
    std::vector<Vec> corners;
    double sx = 1e-7 * std::max(1.0, std::max(std::abs(clip_box.lo[0]), std::abs(clip_box.hi[0])));
    double sy = 1e-7 * std::max(1.0, std::max(std::abs(clip_box.lo[1]), std::abs(clip_box.hi[1])));
    for (const Vec& p : poly) {
        bool on_box = std::abs(p[0] - clip_box.lo[0]) < sx || std::abs(p[0] - clip_box.hi[0]) < sx ||
                      std::abs(p[1] - clip_box.lo[1]) < sy || std::abs(p[1] - clip_box.hi[1]) < sy;
        if (!on_box) corners.push_back(p);
    }
    return corners;
}

Halfspace QuantileFn::direction_halfspace(const Vec& w, double p) const {
    if (norm(w) == 0.0) throw_invalid_direction("direction w must be nonzero");
    if (!cone().in_dual(w)) throw_invalid_direction("direction lies outside the dual cone");
    Vec u = normalized(w);
    double q = project_quantile(cdf_.model(), u, p);
    return Halfspace{u, q};
}

Region QuantileFn::lower_quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw_bad_input("quantile level must lie in [0, 1]");
    if (p == 0.0) return Region::whole(cone());
    std::vector<Halfspace> hs;
    hs.reserve(cdf_.directions().dirs.size());
    for (const Vec& w : cdf_.directions().dirs) {
        hs.push_back(Halfspace{w, project_quantile(cdf_.model(), w, p)});
    }
    return Region::hrep(cone(), std::move(hs));
}

bool QuantileFn::member(double p, const Vec& z) const {
    if (!(p >= 0.0 && p <= 1.0)) throw_bad_input("quantile level must lie in [0, 1]");
    if (p == 0.0) return true;
    return cdf_.lower_cdf(z) >= p;
}

Region QuantileFn::dual_quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw_bad_input("quantile level must lie in [0, 1]");
    if (p == 0.0) return Region::whole(cone());
    std::vector<Halfspace> hs;
    hs.reserve(cdf_.directions().dirs.size());
    for (const Vec& w : cdf_.directions().dirs) {
        hs.push_back(Halfspace{w, project_quantile_dual(cdf_.model(), w, p)});
    }
    return Region::hrep(cone(), std::move(hs));
}

namespace detail {

bool simplex_feasible(const std::vector<std::vector<double>>& a0, const std::vector<double>& b0,
                      double tol) {
    const std::size_t rows = a0.size();
    const std::size_t cols = rows == 0 ? 0 : a0[0].size();
    if (rows == 0) return true;

    // Tableau with one artificial variable per row; phase-I minimizes the
    // artificial sum. Column layout: [structural | artificial | rhs].
    const std::size_t width = cols + rows + 1;
    std::vector<std::vector<double>> t(rows + 1, std::vector<double>(width, 0.0));
    std::vector<std::size_t> basis(rows);

    for (std::size_t i = 0; i < rows; ++i) {
        double sign = b0[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < cols; ++j) t[i][j] = sign * a0[i][j];
        t[i][cols + i] = 1.0;
        t[i][width - 1] = sign * b0[i];
        basis[i] = cols + i;
    }
    // Objective row: minimize sum of artificials == maximize -(sum), kept
    // as reduced costs of the artificial basis.
    for (std::size_t j = 0; j < width; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += t[i][j];
        t[rows][j] = s;
    }
    for (std::size_t i = 0; i < rows; ++i) t[rows][cols + i] = 0.0;

    const std::size_t max_iter = 200 * (rows + cols + 1);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // Bland's rule: smallest index with positive reduced cost.
        std::size_t pivot_col = width - 1;
        for (std::size_t j = 0; j + 1 < width; ++j) {
            bool in_basis = false;
            for (std::size_t bi : basis) {
                if (bi == j) {
                    in_basis = true;
                    break;
                }
            }
            if (!in_basis && t[rows][j] > 1e-11) {
                pivot_col = j;
                break;
            }
        }
        if (pivot_col == width - 1) break;  // optimal

        std::size_t pivot_row = rows;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            if (t[i][pivot_col] > 1e-11) {
                double ratio = t[i][width - 1] / t[i][pivot_col];
                if (pivot_row == rows || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[pivot_row])) {
                    pivot_row = i;
                    best_ratio = ratio;
                }
            }
        }
        if (pivot_row == rows) break;  // unbounded column: cannot improve feasibility

        double pv = t[pivot_row][pivot_col];
        for (std::size_t j = 0; j < width; ++j) t[pivot_row][j] /= pv;
        for (std::size_t i = 0; i <= rows; ++i) {
            if (i == pivot_row) continue;
            double f = t[i][pivot_col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[pivot_row][j];
        }
        basis[pivot_row] = pivot_col;
    }

    double infeasibility = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (basis[i] >= cols) infeasibility += t[i][width - 1];
    }
    return infeasibility <= std::max(tol, 1e-9);
}

}  // namespace detail

}  // namespace coneq
