#include "torus_waves/limits.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "torus_waves/errors.hpp"

namespace torus_waves {

namespace {

void require_unit_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw EtaOutOfRange("eta = " + std::to_string(eta) + " outside [0, 1]");
    }
}

void require_signed_eta(double eta) {
    if (!(eta >= -1.0 && eta <= 1.0)) {
        throw EtaOutOfRange("eta = " + std::to_string(eta) + " outside [-1, 1]");
    }
}

}  // namespace

double m_eta_support_upper(double eta) { return 1.0 / std::sqrt(1.0 + eta * eta); }

double sample_m_eta(double eta, RandomStream& rng) {
    require_unit_eta(eta);
    const double x1 = rng.normal();
    const double x2 = rng.normal();
    return (2.0 - (1.0 + eta) * x1 * x1 - (1.0 - eta) * x2 * x2) / (2.0 * std::sqrt(1.0 + eta * eta));
}

SigmaMatrix sigma_matrix(double eta) {
    require_signed_eta(eta);
    SigmaMatrix out;
    const double d = (3.0 + eta) / 8.0;
    const double o = (1.0 - eta) / 8.0;
    out.matrix << 1.0, 0.5, 0.5, 0.0,
                  0.5, d, o, 0.0,
                  0.5, o, d, 0.0,
                  0.0, 0.0, 0.0, o;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(out.matrix, Eigen::EigenvaluesOnly);
    out.eigenvalues = solver.eigenvalues();
    return out;
}

double limit_variance_check(double eta) {
    const Eigen::Matrix4d sigma = sigma_matrix(eta).matrix;
    const Eigen::Vector4d c(1.0, -2.0, -2.0, -4.0);
    // Var(sum c_i Z_i^2) = 2 sum_ij c_i c_j Sigma_ij^2 for centred Gaussians.
    return 2.0 * c.dot(sigma.cwiseProduct(sigma) * c);
}

SigmaSampler::SigmaSampler(double eta) {
    const Eigen::Matrix4d sigma = sigma_matrix(eta).matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(sigma);
    Eigen::Vector4d values = solver.eigenvalues();
    for (int i = 0; i < 4; ++i) {
        if (values[i] < -1e-12) {
            throw InvalidArgument("SigmaSampler: covariance has a negative eigenvalue");
        }
        values[i] = std::sqrt(std::max(values[i], 0.0));
    }
    root_ = solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().transpose();
}

Eigen::Vector4d SigmaSampler::draw(RandomStream& rng) const {
    Eigen::Vector4d g;
    for (int i = 0; i < 4; ++i) g[i] = rng.normal();
    return root_ * g;
}

double limit_variance_mc(double eta, std::size_t draws, RandomStream& rng) {
    if (draws < 2) throw TooFewSamples("limit_variance_mc: need at least 2 draws");
    const SigmaSampler sampler(eta);
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k < draws; ++k) {
        const Eigen::Vector4d z = sampler.draw(rng);
        const double v = z[0] * z[0] - 2.0 * z[1] * z[1] - 2.0 * z[2] * z[2] - 4.0 * z[3] * z[3];
        const double delta = v - mean;
        mean += delta / static_cast<double>(k + 1);
        m2 += delta * (v - mean);
    }
    return m2 / static_cast<double>(draws - 1);
}

double c_constant(double eta) {
    require_signed_eta(eta);
    return (1.0 + eta * eta) / 512.0;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples, double support_upper)
    : sorted_(std::move(samples)), support_upper_(support_upper) {
    if (sorted_.empty()) throw TooFewSamples("EmpiricalCdf: no samples");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const {
    if (t >= support_upper_) return 1.0;
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("EmpiricalCdf::quantile: p outside [0, 1]");
    const auto last = static_cast<double>(sorted_.size() - 1);
    return sorted_[static_cast<std::size_t>(std::llround(p * last))];
}

EmpiricalCdf m_eta_empirical_cdf(double eta, std::size_t sample_size, RandomStream& rng) {
    require_unit_eta(eta);
    if (sample_size < 100000) {
        throw InvalidArgument("m_eta_empirical_cdf: sample_size must be at least 1e5");
    }
    std::vector<double> draws(sample_size);
    for (double& d : draws) d = sample_m_eta(eta, rng);
    return EmpiricalCdf(std::move(draws), m_eta_support_upper(eta));
}

}  // namespace torus_waves
