#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "torus_waves/errors.hpp"
#include "torus_waves/limits.hpp"
#include "torus_waves/stats.hpp"

using namespace torus_waves;

TEST(MEta, SupportAndRange) {
    RandomStream rng(1);
    for (double eta : {0.0, 0.28, 1.0}) {
        const double top = m_eta_support_upper(eta);
        for (int i = 0; i < 10000; ++i) EXPECT_LE(sample_m_eta(eta, rng), top);
    }
    EXPECT_DOUBLE_EQ(m_eta_support_upper(1.0), 1.0 / std::sqrt(2.0));
    EXPECT_THROW(sample_m_eta(1.2, rng), EtaOutOfRange);
    EXPECT_THROW(sample_m_eta(-0.1, rng), EtaOutOfRange);
}

TEST(MEta, Moments) {
    RandomStream rng(2);
    for (double eta : {0.0, 0.5, 1.0}) {
        std::vector<double> x(200000);
        for (double& v : x) v = sample_m_eta(eta, rng);
        EXPECT_NEAR(stats::mean(x), 0.0, 0.01);
        EXPECT_NEAR(stats::variance(x), 1.0, 0.02);
    }
}

TEST(Sigma, EigenvaluesAtZero) {
    const SigmaMatrix s = sigma_matrix(0.0);
    const double expected[4] = {0.0, 0.125, 0.25, 1.5};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.eigenvalues[i], expected[i], 1e-12);
    EXPECT_TRUE(s.matrix.isApprox(s.matrix.transpose()));
}

TEST(Sigma, PositiveSemidefiniteAndMagicVariance) {
    for (double eta = -1.0; eta <= 1.0; eta += 0.125) {
        const SigmaMatrix s = sigma_matrix(eta);
        EXPECT_GE(s.eigenvalues.minCoeff(), -1e-12) << eta;
        EXPECT_NEAR(limit_variance_check(eta), 1.0 + eta * eta, 1e-12) << eta;
    }
    EXPECT_THROW(sigma_matrix(1.5), EtaOutOfRange);
}

TEST(Sigma, SamplerReproducesCovariance) {
    const double eta = 0.4;
    const SigmaSampler sampler(eta);
    EXPECT_TRUE((sampler.root() * sampler.root()).isApprox(sigma_matrix(eta).matrix, 1e-12));
    RandomStream rng(3);
    EXPECT_NEAR(limit_variance_mc(eta, 400000, rng), 1.0 + eta * eta, 0.03);
}

TEST(Constants, C) {
    EXPECT_DOUBLE_EQ(c_constant(0.0), 1.0 / 512.0);
    EXPECT_DOUBLE_EQ(c_constant(1.0), 2.0 / 512.0);
}

TEST(EmpiricalCdf, Basics) {
    const EmpiricalCdf F({3.0, 1.0, 2.0, 2.0}, 10.0);
    EXPECT_EQ(F.size(), 4u);
    EXPECT_DOUBLE_EQ(F(0.5), 0.0);
    EXPECT_DOUBLE_EQ(F(1.0), 0.25);
    EXPECT_DOUBLE_EQ(F(2.5), 0.75);
    EXPECT_DOUBLE_EQ(F(10.0), 1.0);
    EXPECT_TRUE(std::is_sorted(F.sorted().begin(), F.sorted().end()));
    EXPECT_DOUBLE_EQ(F.quantile(0.0), 1.0);
    EXPECT_DOUBLE_EQ(F.quantile(1.0), 3.0);
    EXPECT_THROW(F.quantile(1.1), InvalidArgument);
    EXPECT_THROW(EmpiricalCdf({}, 1.0), TooFewSamples);
}

TEST(EmpiricalCdf, ForcedToOneAtSupportEdge) {
    RandomStream rng(4);
    const EmpiricalCdf F = m_eta_empirical_cdf(1.0, 100000, rng);
    EXPECT_DOUBLE_EQ(F(m_eta_support_upper(1.0)), 1.0);
    EXPECT_LT(F(0.0), 1.0);
    EXPECT_THROW(m_eta_empirical_cdf(1.0, 99999, rng), InvalidArgument);
    EXPECT_THROW(m_eta_empirical_cdf(2.0, 100000, rng), EtaOutOfRange);
}

TEST(Stats, Helpers) {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    EXPECT_DOUBLE_EQ(stats::mean(x), 2.5);
    EXPECT_DOUBLE_EQ(stats::variance(x), 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(stats::covariance(x, x), 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(stats::standard_error(x), std::sqrt(5.0 / 12.0));
    const std::vector<double> one{1.0};
    EXPECT_THROW(stats::variance(one), TooFewSamples);
}

TEST(MEta, LawsMoveMonotonicallyInEta) {
    // Sup distance between the CDFs of M_0 and M_eta grows with eta.
    std::vector<EmpiricalCdf> cdfs;
    for (double eta : {0.0, 0.25, 0.5, 1.0}) {
        RandomStream rng(77);  // common random numbers
        cdfs.push_back(m_eta_empirical_cdf(eta, 200000, rng));
    }
    const auto sup_distance = [](const EmpiricalCdf& a, const EmpiricalCdf& b) {
        double d = 0.0;
        for (double t = -6.0; t <= 1.0; t += 0.005) d = std::max(d, std::abs(a(t) - b(t)));
        return d;
    };
    const double d1 = sup_distance(cdfs[0], cdfs[1]);
    const double d2 = sup_distance(cdfs[0], cdfs[2]);
    const double d3 = sup_distance(cdfs[0], cdfs[3]);
    EXPECT_LT(d1, d2);
    EXPECT_LT(d2, d3);
}
