#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "coneq/geometry.hpp"

namespace coneq {

// Standard normal cdf, absolute error below 1e-15 (erfc based).
double normal_cdf(double x);
// Standard normal quantile; rational initial guess refined by Halley
// steps against normal_cdf. Absolute error below 1e-12 on (0, 1).
double normal_quantile(double p);

// Weighted point sample. Weights are renormalized at construction so the
// full accumulated sum is exactly 1.0 in double arithmetic; uniformly
// weighted samples use integer counting throughout, which keeps cdf
// values exact rationals k/n.
class EmpiricalSample {
public:
    explicit EmpiricalSample(std::vector<Vec> points);
    EmpiricalSample(std::vector<Vec> points, std::vector<double> weights);

    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    bool uniform() const { return uniform_; }

    // Total weight of {i : projections[i] <= t} (or < t when strict).
    double weight_below(const std::vector<double>& projections, double t, bool strict) const;

private:
    std::vector<Vec> points_;
    std::vector<double> weights_;
    bool uniform_;
    std::size_t dim_;
};

// Gaussian model N(mu, sigma); sigma symmetric positive semidefinite.
class GaussianModel {
public:
    GaussianModel(Vec mu, std::vector<Vec> sigma);

    std::size_t dim() const { return mu_.size(); }
    const Vec& mu() const { return mu_; }
    const std::vector<Vec>& sigma() const { return sigma_; }

    // sqrt(w' Sigma w), clamped at zero.
    double projected_sd(const Vec& w) const;

private:
    Vec mu_;
    std::vector<Vec> sigma_;
};

using DistributionModel = std::variant<EmpiricalSample, GaussianModel>;

std::size_t model_dim(const DistributionModel& model);

// Pr{w.X <= t}. Weak inequality, hence right-continuous in t.
double project_cdf(const DistributionModel& model, const Vec& w, double t);
// Pr{w.X < t}.
double project_strict_cdf(const DistributionModel& model, const Vec& w, double t);
// Lower quantile inf{s : Pr{w.X <= s} >= p}; -inf at p = 0.
double project_quantile(const DistributionModel& model, const Vec& w, double p);
// The same threshold by the dual route: sup{r : Pr{w.X < r} < p}.
// Computed from the strict cdf, independently of project_quantile.
double project_quantile_dual(const DistributionModel& model, const Vec& w, double p);

// Eigenvalues of a symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> symmetric_eigenvalues(std::vector<Vec> m);

}  // namespace coneq
