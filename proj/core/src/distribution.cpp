#include "coneq/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace coneq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_direction(const DistributionModel& model, const Vec& w) {
    if (w.size() != model_dim(model)) {
        throw_bad_input("direction dimension does not match the model");
    }
    if (norm(w) == 0.0) throw_invalid_direction("direction w must be nonzero");
}

void check_prob(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw_bad_input("probability level must lie in [0, 1]");
}

std::vector<double> projections(const EmpiricalSample& s, const Vec& w) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const Vec& x : s.points()) out.push_back(dot(w, x));
    return out;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    check_prob(p);
    if (p == 0.0) return -kInf;
    if (p == 1.0) return kInf;

    // Acklam's rational approximation, then two Halley refinements.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;

    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    for (int i = 0; i < 2; ++i) {
        double e = normal_cdf(x) - p;
        double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
        x = x - u / (1.0 + 0.5 * x * u);
    }
    return x;
}

EmpiricalSample::EmpiricalSample(std::vector<Vec> points)
    : points_(std::move(points)), uniform_(true) {
    if (points_.empty()) throw_bad_input("empirical sample needs at least one point");
    dim_ = points_[0].size();
    if (dim_ == 0) throw_bad_input("empirical sample points must have dimension >= 1");
    for (const Vec& x : points_) {
        if (x.size() != dim_) throw_bad_input("empirical sample has rows of mixed dimension");
        if (!all_finite(x)) throw_bad_input("empirical sample has non-finite coordinates");
    }
    weights_.assign(points_.size(), 1.0 / static_cast<double>(points_.size()));
}

EmpiricalSample::EmpiricalSample(std::vector<Vec> points, std::vector<double> weights)
    : EmpiricalSample(std::move(points)) {
    if (weights.size() != points_.size()) {
        throw_bad_input("weight count does not match point count");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw_bad_input("weights must be finite and >= 0");
        total += w;
    }
    if (total < 1e-300) throw_bad_input("weights must have positive total");
    for (double& w : weights) w /= total;
    // Pin the accumulated total to exactly 1.0: replace the last weight by
    // the rounding-exact complement of the prefix sum.
    double prefix = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) prefix += weights[i];
    weights.back() = std::max(0.0, 1.0 - prefix);
    weights_ = std::move(weights);
    uniform_ = false;
}

double EmpiricalSample::weight_below(const std::vector<double>& projections, double t,
                                     bool strict) const {
    if (uniform_) {
        std::size_t count = 0;
        for (double v : projections) count += strict ? (v < t) : (v <= t);
        return static_cast<double>(count) / static_cast<double>(points_.size());
    }
    double s = 0.0;
    for (std::size_t i = 0; i < projections.size(); ++i) {
        if (strict ? (projections[i] < t) : (projections[i] <= t)) s += weights_[i];
    }
    return s;
}

GaussianModel::GaussianModel(Vec mu, std::vector<Vec> sigma)
    : mu_(std::move(mu)), sigma_(std::move(sigma)) {
    std::size_t d = mu_.size();
    if (d == 0) throw_bad_input("Gaussian mean must have dimension >= 1");
    if (!all_finite(mu_)) throw_bad_input("Gaussian mean has non-finite entries");
    if (sigma_.size() != d) throw_bad_input("Gaussian covariance must be d x d");
    for (const Vec& row : sigma_) {
        if (row.size() != d) throw_bad_input("Gaussian covariance must be d x d");
        if (!all_finite(row)) throw_bad_input("Gaussian covariance has non-finite entries");
    }
    double scale = 0.0;
    for (const Vec& row : sigma_)
        for (double v : row) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            if (std::abs(sigma_[i][j] - sigma_[j][i]) > 1e-12 * std::max(1.0, scale)) {
                throw_bad_input("Gaussian covariance is not symmetric");
            }
        }
    }
    std::vector<double> eig = symmetric_eigenvalues(sigma_);
    if (!eig.empty() && eig.front() < -1e-10 * std::max(1.0, scale)) {
        throw_bad_input("Gaussian covariance is not positive semidefinite");
    }
}

double GaussianModel::projected_sd(const Vec& w) const {
    double q = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim(); ++j) row += sigma_[i][j] * w[j];
        q += w[i] * row;
    }
    return std::sqrt(std::max(0.0, q));
}

std::size_t model_dim(const DistributionModel& model) {
    return std::visit([](const auto& m) { return m.dim(); }, model);
}

double project_cdf(const DistributionModel& model, const Vec& w, double t) {
    check_direction(model, w);
    if (std::isnan(t)) throw_bad_input("cdf argument is NaN");
    if (t == -kInf) return 0.0;
    if (t == kInf) return 1.0;

    if (const auto* s = std::get_if<EmpiricalSample>(&model)) {
        return s->weight_below(projections(*s, w), t, /*strict=*/false);
    }
    const auto& g = std::get<GaussianModel>(model);
    double m = dot(w, g.mu());
    double sd = g.projected_sd(w);
    if (sd == 0.0) return t >= m ? 1.0 : 0.0;
    return normal_cdf((t - m) / sd);
}

double project_strict_cdf(const DistributionModel& model, const Vec& w, double t) {
    check_direction(model, w);
    if (std::isnan(t)) throw_bad_input("cdf argument is NaN");
    if (t == -kInf) return 0.0;
    if (t == kInf) return 1.0;

    if (const auto* s = std::get_if<EmpiricalSample>(&model)) {
        return s->weight_below(projections(*s, w), t, /*strict=*/true);
    }
    const auto& g = std::get<GaussianModel>(model);
    double m = dot(w, g.mu());
    double sd = g.projected_sd(w);
    if (sd == 0.0) return t > m ? 1.0 : 0.0;
    return normal_cdf((t - m) / sd);  // atomless: strict = weak
}

double project_quantile(const DistributionModel& model, const Vec& w, double p) {
    check_direction(model, w);
    check_prob(p);
    if (p == 0.0) return -kInf;

    if (const auto* s = std::get_if<EmpiricalSample>(&model)) {
        std::vector<double> proj = projections(*s, w);
        std::vector<double> cand = proj;
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        // Smallest candidate with F(s) >= p; F evaluated by the same
        // counting rule as project_cdf, so the univariate adjunction
        // F(t) >= p <=> t >= q(p) holds exactly in double arithmetic.
        std::size_t lo = 0, hi = cand.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (s->weight_below(proj, cand[mid], false) >= p) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return lo < cand.size() ? cand[lo] : kInf;
    }

    const auto& g = std::get<GaussianModel>(model);
    double m = dot(w, g.mu());
    double sd = g.projected_sd(w);
    if (sd == 0.0) return m;
    if (p == 1.0) return kInf;
    return m + sd * normal_quantile(p);
}

double project_quantile_dual(const DistributionModel& model, const Vec& w, double p) {
    check_direction(model, w);
    check_prob(p);
    if (p == 0.0) return -kInf;

    if (const auto* s = std::get_if<EmpiricalSample>(&model)) {
        std::vector<double> proj = projections(*s, w);
        std::vector<double> cand = proj;
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        // Largest candidate r with Pr{w.X < r} < p; the strict cdf jumps
        // only at projection values, so the supremum is attained there.
        std::size_t lo = 0, hi = cand.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (s->weight_below(proj, cand[mid], true) < p) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        return lo > 0 ? cand[lo - 1] : -kInf;
    }

    const auto& g = std::get<GaussianModel>(model);
    double m = dot(w, g.mu());
    double sd = g.projected_sd(w);
    if (sd == 0.0) return m;  // sup{r : 1{r > m} < p} = m for p in (0, 1]
    if (p == 1.0) return kInf;
    return m + sd * normal_quantile(p);
}

std::vector<double> symmetric_eigenvalues(std::vector<Vec> m) {
    const std::size_t n = m.size();
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (m[p][q] == 0.0) continue;
                double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace coneq
