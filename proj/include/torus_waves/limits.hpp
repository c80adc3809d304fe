#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "torus_waves/rng.hpp"

namespace torus_waves {

/// Upper end of the support of M_eta, 1 / sqrt(1 + eta^2).
double m_eta_support_upper(double eta);

/// One draw of M_eta = (2 - (1+eta) X1^2 - (1-eta) X2^2) / (2 sqrt(1+eta^2)).
/// Requires 0 <= eta <= 1 (EtaOutOfRange otherwise).
double sample_m_eta(double eta, RandomStream& rng);

struct SigmaMatrix {
    Eigen::Matrix4d matrix;
    Eigen::Vector4d eigenvalues;  ///< ascending
};

/// Limiting covariance of W(n) for spectral parameter eta in [-1, 1].
SigmaMatrix sigma_matrix(double eta);

/// 2 c^T (Sigma o Sigma) c with c = (1, -2, -2, -4): the variance of
/// Z1^2 - 2 Z2^2 - 2 Z3^2 - 4 Z4^2 for Z ~ N(0, Sigma(eta)). Equals 1 + eta^2.
double limit_variance_check(double eta);

/// Draws Z ~ N(0, Sigma(eta)) through the symmetric square root of Sigma,
/// with eigenvalues above -1e-12 clamped to zero.
class SigmaSampler {
public:
    explicit SigmaSampler(double eta);
    Eigen::Vector4d draw(RandomStream& rng) const;
    const Eigen::Matrix4d& root() const noexcept { return root_; }

private:
    Eigen::Matrix4d root_;
};

/// Monte Carlo estimate of limit_variance_check from `draws` samples.
double limit_variance_mc(double eta, std::size_t draws, RandomStream& rng);

/// (1 + eta^2) / 512.
double c_constant(double eta);

/// Sorted-sample CDF. Evaluation is a binary search; the value is forced to 1
/// at and above the declared support upper bound.
class EmpiricalCdf {
public:
    EmpiricalCdf(std::vector<double> samples, double support_upper);

    double operator()(double t) const;
    double quantile(double p) const;

    std::size_t size() const noexcept { return sorted_.size(); }
    double support_upper() const noexcept { return support_upper_; }
    const std::vector<double>& sorted() const noexcept { return sorted_; }

private:
    std::vector<double> sorted_;
    double support_upper_;
};

/// Empirical CDF of M_eta from `sample_size` >= 1e5 draws
/// (InvalidArgument below that, EtaOutOfRange outside [0, 1]).
EmpiricalCdf m_eta_empirical_cdf(double eta, std::size_t sample_size, RandomStream& rng);

}  // namespace torus_waves
