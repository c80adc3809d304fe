#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "torus_waves/field.hpp"
#include "torus_waves/hermite.hpp"

namespace torus_waves {

/// (a, b, c) names the torus integral of H_a(T) H_b(d1 T) H_c(d2 T), with
/// the derivatives normalized to unit variance.
struct HermiteTriple {
    int a = 0;
    int b = 0;
    int c = 0;

    friend constexpr bool operator==(const HermiteTriple&, const HermiteTriple&) = default;
    friend constexpr auto operator<=>(const HermiteTriple&, const HermiteTriple&) = default;
};

/// The six integrals entering the fourth chaotic projection.
inline constexpr std::array<HermiteTriple, 6> kFourthChaosTriples{{
    {4, 0, 0}, {0, 4, 0}, {0, 0, 4}, {2, 2, 0}, {2, 0, 2}, {0, 2, 2},
}};

/// Weighted sums of s = |a_lambda|^2 over the full lattice.
struct LatticeMoments {
    double N = 0.0, n = 0.0;
    double S = 0.0;                        // sum s
    double Q = 0.0;                        // sum s^2
    double S11 = 0.0, S22 = 0.0, S12 = 0.0;  // sum lambda_i lambda_j s
    double Q11 = 0.0, Q22 = 0.0;           // sum lambda_j^2 s^2
    double Q1111 = 0.0, Q2222 = 0.0, Q1122 = 0.0;

    static LatticeMoments of(const WaveCoefficients& coeffs);
};

/// W(n): (1/(n sqrt(N/2))) sum over the half lattice of
/// (|a|^2 - 1) (n, l1^2, l2^2, l1 l2).
std::array<double, 4> w_vector(const WaveCoefficients& coeffs);

/// Second chaotic projection of the nodal length, evaluated term by term.
/// Passing a table with modified beta values exposes the cancellation.
double proj2(const WaveCoefficients& coeffs, const CoefficientTable& table);
double proj2(const WaveCoefficients& coeffs);

/// Second chaotic projection of the length of {T = u}:
/// sqrt(E/2) sqrt(pi/8) phi(u) u^2 (1/N) sum (|a|^2 - 1).
double proj2_level(const WaveCoefficients& coeffs, double u);

/// Exact value from lattice sums. Throws UnsupportedTriple outside
/// kFourthChaosTriples.
double hermite_integral(const WaveCoefficients& coeffs, HermiteTriple triple);
double hermite_integral(const LatticeMoments& moments, HermiteTriple triple);

/// Grid mean of H_a(T) H_b(d1 T) H_c(d2 T); the grid needs gradients.
double hermite_grid_mean(const FieldGrid& grid, HermiteTriple triple);

/// Same integral by trapezoid quadrature on an M x M grid, exact when
/// M >= 2 (a+b+c) ceil(sqrt(n)) + 1 (ResolutionTooLow otherwise).
double hermite_integral_quadrature(const WaveCoefficients& coeffs, HermiteTriple triple,
                                   std::size_t M);

/// Exact finite-n fourth chaotic projection L_n[4].
double proj4_exact(const WaveCoefficients& coeffs, const CoefficientTable& table);
double proj4_exact(const WaveCoefficients& coeffs);
double proj4_exact(const LatticeMoments& moments, const CoefficientTable& table);

/// Large-N form sqrt(E/(512 N^2)) (1 + W1^2 - 2 W2^2 - 2 W3^2 - 4 W4^2).
double proj4_asymptotic(const WaveCoefficients& coeffs);
double proj4_asymptotic(std::int64_t n, std::size_t N, const std::array<double, 4>& w);

/// L_n[2q] by grid quadrature of the full Hermite expansion of order 2q.
/// Requires 2 <= q <= 16 and M >= 4 q ceil(sqrt(n)) + 1.
double proj_quadrature(const WaveCoefficients& coeffs, int q, std::size_t M);

struct S4Structure {
    std::uint64_t cardinality = 0;
    std::uint64_t class_a = 0;  ///< tuples (l, l', -l, -l') and permutations, l' != +-l
    std::uint64_t class_b = 0;  ///< arrangements of (l, l, -l, -l)
    std::vector<std::array<LatticePoint, 4>> samples;
};

/// Brute-force enumeration of the 4-tuples of lattice points summing to 0.
/// Throws CircleTooLarge when N > 256.
S4Structure s4_structure(const LatticeCircle& circle, std::size_t max_samples = 16);

struct ChaosReport {
    std::array<double, 4> w{};
    double proj2 = 0.0;
    double proj4 = 0.0;
    double proj4_asymptotic = 0.0;
    std::map<HermiteTriple, double> hermite_integrals;
    std::uint64_t s4_cardinality = 0;
};

/// s4_cardinality comes from brute force when `enumerate_s4` is set and
/// from 3 N (N - 1) otherwise.
ChaosReport chaos_report(const WaveCoefficients& coeffs, bool enumerate_s4 = false);

}  // namespace torus_waves
