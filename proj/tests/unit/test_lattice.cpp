#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "torus_waves/errors.hpp"
#include "torus_waves/lattice.hpp"

using namespace torus_waves;

namespace {

std::vector<LatticePoint> brute_force(std::int64_t n) {
    std::vector<LatticePoint> out;
    const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n))) + 1;
    for (std::int64_t a = -r; a <= r; ++a) {
        for (std::int64_t b = -r; b <= r; ++b) {
            if (a * a + b * b == n) out.push_back({a, b});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(Lattice, UnitCircle) {
    const LatticeCircle c = enumerate_circle(1);
    const std::vector<LatticePoint> expected{{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
    EXPECT_EQ(c.points, expected);
    EXPECT_EQ(c.cardinality(), 4u);
}

TEST(Lattice, ThreeIsNotASumOfTwoSquares) {
    EXPECT_THROW(enumerate_circle(3), NotSumOfTwoSquares);
    EXPECT_FALSE(is_sum_of_two_squares(3));
    EXPECT_THROW(enumerate_circle(0), InvalidArgument);
}

TEST(Lattice, TwentyFive) {
    const LatticeCircle c = enumerate_circle(25);
    ASSERT_EQ(c.cardinality(), 12u);
    const std::set<LatticePoint> got(c.points.begin(), c.points.end());
    for (LatticePoint p : {LatticePoint{5, 0}, {-5, 0}, {0, 5}, {0, -5}, {3, 4}, {-3, 4}, {3, -4},
                           {-3, -4}, {4, 3}, {-4, 3}, {4, -3}, {-4, -3}}) {
        EXPECT_TRUE(got.contains(p)) << p.x << "," << p.y;
    }
}

TEST(Lattice, Five) {
    const LatticeCircle c = enumerate_circle(5);
    EXPECT_EQ(c.cardinality(), 8u);
    for (const auto& p : c.points) {
        EXPECT_EQ(std::set<std::int64_t>({std::abs(p.x), std::abs(p.y)}),
                  (std::set<std::int64_t>{1, 2}));
    }
}

TEST(Lattice, HalfPointConvention) {
    const LatticeCircle c = enumerate_circle(25);
    ASSERT_EQ(c.half_points.size(), 6u);
    for (const auto& p : c.half_points) EXPECT_TRUE(p.y > 0 || (p.y == 0 && p.x > 0));
    for (std::size_t i = 0; i < c.cardinality(); ++i) {
        const LatticePoint rep = c.half_points[c.half_index[i]];
        const LatticePoint p = c.points[i];
        if (c.is_mirror[i]) {
            EXPECT_EQ(rep, (LatticePoint{-p.x, -p.y}));
        } else {
            EXPECT_EQ(rep, p);
        }
    }
}

TEST(Lattice, AgreesWithBruteForceAndInvariantsUpTo10000) {
    std::size_t circles = 0;
    for (std::int64_t n = 1; n <= 10000; ++n) {
        const auto expected = brute_force(n);
        if (expected.empty()) {
            EXPECT_FALSE(is_sum_of_two_squares(n));
            continue;
        }
        ++circles;
        const LatticeCircle c = enumerate_circle(n);
        ASSERT_EQ(c.points, expected) << "n=" << n;
        EXPECT_TRUE(std::is_sorted(c.points.begin(), c.points.end()));
        EXPECT_EQ(c.cardinality() % 4, 0u);
        EXPECT_EQ(c.half_points.size() * 2, c.cardinality());

        const std::set<LatticePoint> all(c.points.begin(), c.points.end());
        std::set<LatticePoint> covered;
        for (const auto& p : c.half_points) {
            EXPECT_FALSE(covered.contains(p));
            covered.insert(p);
            covered.insert({-p.x, -p.y});
        }
        EXPECT_EQ(covered, all);
        for (const auto& p : c.points) {
            EXPECT_EQ(p.x * p.x + p.y * p.y, n);
            EXPECT_TRUE(all.contains({-p.x, -p.y}));
            EXPECT_TRUE(all.contains({-p.y, p.x}));
        }
    }
    EXPECT_GT(circles, 2000u);
}

TEST(Fourier, ExamplesFromTheDefinition) {
    const LatticeCircle c1 = enumerate_circle(1);
    const LatticeCircle c5 = enumerate_circle(5);
    EXPECT_NEAR(std::abs(fourier_coefficient(c5, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(fourier_coefficient(c1, 4).real(), 1.0, 1e-15);
    EXPECT_NEAR(fourier_coefficient(c5, 4).real(), -0.28, 1e-15);
    EXPECT_DOUBLE_EQ(fourier_coefficient4(c5), -0.28);
    EXPECT_DOUBLE_EQ(fourier_coefficient4(c1), 1.0);
}

TEST(Fourier, SymmetryProperties) {
    for (std::int64_t n = 1; n <= 3000; ++n) {
        if (!is_sum_of_two_squares(n)) continue;
        const LatticeCircle c = enumerate_circle(n);
        for (int k = -9; k <= 9; ++k) {
            const auto z = fourier_coefficient(c, k);
            EXPECT_LE(std::abs(z), 1.0 + 1e-12);
            if (k % 4 != 0) EXPECT_NEAR(std::abs(z), 0.0, 1e-12) << "n=" << n << " k=" << k;
            EXPECT_NEAR(z.imag(), 0.0, 1e-12);
        }
        EXPECT_NEAR(fourier_coefficient(c, 4).real(), fourier_coefficient4(c), 1e-12);
        EXPECT_NEAR(fourier_coefficient(c, -4).real(), fourier_coefficient4(c), 1e-12);
    }
}

TEST(Fourier, LargePowersFallBackToFloatingPoint) {
    const LatticeCircle c = enumerate_circle(1105);
    const auto z = fourier_coefficient(c, 40);
    EXPECT_LE(std::abs(z), 1.0 + 1e-12);
    EXPECT_NEAR(z.imag(), 0.0, 1e-12);
}

TEST(SearchEta, Examples) {
    const auto exact = search_eta(1.0, 1, 1, 0.0);
    ASSERT_EQ(exact.size(), 1u);
    EXPECT_EQ(exact[0].n, 1);
    EXPECT_DOUBLE_EQ(exact[0].mu4, 1.0);

    const auto five = search_eta(0.28, 1, 10, 1e-12);
    EXPECT_TRUE(std::any_of(five.begin(), five.end(),
                            [](const EtaMatch& m) { return m.n == 5 && std::abs(m.mu4 + 0.28) < 1e-15; }));

    EXPECT_THROW(search_eta(2.0, 1, 10, 0.1), InvalidTarget);
    EXPECT_THROW(search_eta(-0.1, 1, 10, 0.1), InvalidTarget);
}
