#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "torus_waves/errors.hpp"
#include "torus_waves/hermite.hpp"

using namespace torus_waves;

namespace {
const double kSqrtHalfPi = std::sqrt(std::numbers::pi / 2.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
}  // namespace

TEST(Hermite, SpecValues) {
    EXPECT_EQ(hermite(2, 0.0), -1.0);
    EXPECT_EQ(hermite(4, 0.0), 3.0);
    EXPECT_EQ(hermite(0, 17.5), 1.0);
    EXPECT_EQ(hermite(3, 1.0), -2.0);
    EXPECT_THROW(hermite(-1, 0.0), InvalidArgument);
}

TEST(Hermite, RecurrenceMatchesExplicitPolynomials) {
    const std::array<double (*)(double), 7> explicit_forms{
        [](double) { return 1.0; },
        [](double t) { return t; },
        [](double t) { return t * t - 1; },
        [](double t) { return t * t * t - 3 * t; },
        [](double t) { return std::pow(t, 4) - 6 * t * t + 3; },
        [](double t) { return std::pow(t, 5) - 10 * std::pow(t, 3) + 15 * t; },
        [](double t) { return std::pow(t, 6) - 15 * std::pow(t, 4) + 45 * t * t - 15; },
    };
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double t = dist(gen);
        std::array<double, 7> all{};
        hermite_all(t, all);
        for (int k = 0; k <= 6; ++k) {
            const double want = explicit_forms[k](t);
            EXPECT_NEAR(hermite(k, t), want, 1e-12 * std::max(1.0, std::abs(want)));
            EXPECT_NEAR(all[k], want, 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST(Beta, Values) {
    EXPECT_NEAR(beta_coefficient(0), 0.398942280401433, 1e-15);
    EXPECT_DOUBLE_EQ(beta_coefficient(2), -kInvSqrt2Pi);
    EXPECT_NEAR(beta_coefficient(4), 1.196826841204298, 1e-14);
    EXPECT_THROW(beta_coefficient(3), OddIndex);
}

TEST(BetaEps, OddVanishesAndWideBandSaturates) {
    for (int l : {1, 3, 5}) EXPECT_EQ(beta_eps(l, 0.3), 0.0);
    EXPECT_NEAR(beta_eps(0, 10.0), 0.05, 1e-12);
    EXPECT_THROW(beta_eps(0, 0.0), InvalidArgument);
}

TEST(BetaEps, ConvergesToBetaQuadratically) {
    for (int l : {0, 2, 4, 6}) {
        const double target = beta_coefficient(l);
        const double e2 = std::abs(beta_eps(l, 1e-2) - target);
        const double e3 = std::abs(beta_eps(l, 1e-3) - target);
        const double e4 = std::abs(beta_eps(l, 1e-4) - target);
        EXPECT_LT(e3, e2);
        EXPECT_LT(e4, 1e-6);
        // Even integrand: the error is O(eps^2), so a factor 10 in eps gives ~100.
        EXPECT_NEAR(e2 / e3, 100.0, 5.0) << "l=" << l;
    }
}

TEST(Alpha, GoldenValues) {
    EXPECT_NEAR(alpha_coefficient(0, 0), kSqrtHalfPi, 1e-15);
    EXPECT_NEAR(alpha_coefficient(2, 0), 0.5 * kSqrtHalfPi, 1e-15);
    EXPECT_NEAR(alpha_coefficient(0, 2), 0.5 * kSqrtHalfPi, 1e-15);
    EXPECT_NEAR(alpha_coefficient(2, 2), -kSqrtHalfPi / 8.0, 1e-15);
    EXPECT_NEAR(alpha_coefficient(4, 0), -0.375 * kSqrtHalfPi, 1e-15);
    EXPECT_THROW(alpha_coefficient(1, 2), OddIndex);
}

TEST(Alpha, SecondChaosCancellationIsExact) {
    EXPECT_EQ(alpha_coefficient(0, 0) * beta_coefficient(2) +
                  2.0 * alpha_coefficient(0, 2) * beta_coefficient(0),
              0.0);
}

TEST(Alpha, SymmetricAndFiniteAtHighOrder) {
    for (int a = 0; a <= 40; a += 2) {
        for (int b = 0; b <= 40; b += 2) {
            EXPECT_TRUE(std::isfinite(alpha_coefficient(a, b)));
            EXPECT_EQ(alpha_coefficient(a, b), alpha_coefficient(b, a));
        }
    }
}

TEST(AlphaOracle, KnownValues) {
    EXPECT_NEAR(alpha_quadrature_oracle(0, 0), 1.253314137, 1e-8);
    EXPECT_NEAR(alpha_quadrature_oracle(2, 2), -0.156664267, 1e-8);
    EXPECT_THROW(alpha_quadrature_oracle(1, 2), InvalidArgument);
    EXPECT_THROW(alpha_quadrature_oracle(8, 6), InvalidArgument);
}

TEST(AlphaOracle, AgreesWithClosedFormUpToOrder12) {
    for (int a = 0; a <= 12; a += 2) {
        for (int b = 0; a + b <= 12; b += 2) {
            EXPECT_NEAR(alpha_coefficient(a, b), alpha_quadrature_oracle(a, b), 1e-7)
                << "(" << a << "," << b << ")";
        }
    }
}

TEST(CoefficientTable, Invariants) {
    const CoefficientTable t = CoefficientTable::build(8);
    EXPECT_EQ(t.max_order, 8);
    EXPECT_DOUBLE_EQ(t.beta_at(0), kInvSqrt2Pi);
    for (const auto& [l, v] : t.beta) {
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_EQ(v > 0, (l / 2) % 2 == 0) << "sign of beta_" << l;
    }
    for (const auto& [ab, v] : t.alpha) {
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_EQ(v, t.alpha_at(ab.second, ab.first));
        EXPECT_EQ(v, alpha_coefficient(ab.first, ab.second));
    }
    EXPECT_THROW(t.alpha_at(10, 0), InvalidArgument);
    EXPECT_THROW(t.beta_at(10), InvalidArgument);
    EXPECT_THROW(CoefficientTable::build(3), InvalidArgument);
}
