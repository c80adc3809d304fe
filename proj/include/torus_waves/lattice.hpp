#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace torus_waves {

struct LatticePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// The frequency set of the eigenvalue 4*pi^2*n: all integer points on the
/// circle of radius sqrt(n), in lexicographic order.
///
/// `half_points` holds one representative of every antipodal pair, chosen as
/// y > 0, or y == 0 and x > 0. For each entry of `points`, `half_index` names
/// the representative of its pair and `is_mirror` is true when the point is
/// the negated representative (its coefficient is the conjugate).
struct LatticeCircle {
    std::int64_t n = 0;
    std::vector<LatticePoint> points;
    std::vector<LatticePoint> half_points;
    std::vector<std::size_t> half_index;
    std::vector<bool> is_mirror;

    std::size_t cardinality() const noexcept { return points.size(); }
    double energy() const noexcept;  ///< E_n = 4 pi^2 n
};

/// True when n is a sum of two squares (n >= 1).
bool is_sum_of_two_squares(std::int64_t n);

/// Throws NotSumOfTwoSquares when the circle has no lattice points and
/// InvalidArgument when n < 1.
LatticeCircle enumerate_circle(std::int64_t n);

/// mu_hat(k) = (1/N) sum over points of (lambda/sqrt(n))^(-k), the lattice
/// points read as complex numbers x + iy.
std::complex<double> fourier_coefficient(const LatticeCircle& circle, int k);

/// Integer-exact fourth coefficient, (sum x^4 + y^4 - 6 x^2 y^2) / (n^2 N).
double fourier_coefficient4(const LatticeCircle& circle);

struct EtaMatch {
    std::int64_t n = 0;
    std::size_t cardinality = 0;
    double mu4 = 0.0;  ///< signed mu_hat_n(4)
};

/// Every n in [n_min, n_max] that is a sum of two squares and satisfies
/// | |mu_hat_n(4)| - target | <= tolerance. Throws InvalidTarget unless
/// 0 <= target <= 1.
std::vector<EtaMatch> search_eta(double target, std::int64_t n_min, std::int64_t n_max,
                                 double tolerance);

}  // namespace torus_waves
