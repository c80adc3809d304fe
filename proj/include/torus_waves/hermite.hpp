#pragma once

#include <map>
#include <span>
#include <utility>

namespace torus_waves {

/// Probabilists' Hermite polynomial H_k(t) by the three-term recurrence
/// H_k = t H_{k-1} - (k-1) H_{k-2}.
double hermite(int k, double t);

/// Fills out[k] = H_k(t) for k = 0 .. out.size() - 1.
void hermite_all(double t, std::span<double> out);

/// Standard Gaussian density.
double gaussian_density(double t);

/// beta_l = H_l(0) / sqrt(2 pi), the Hermite coefficients of the Dirac mass
/// at 0. Throws OddIndex for odd l (the coefficient is 0 there).
double beta_coefficient(int l);

/// Hermite coefficients of (1/2eps) 1_[-eps, eps]; converges to
/// beta_coefficient(l) as eps -> 0 and vanishes for odd l.
double beta_eps(int l, double eps);

/// Hermite coefficients of the Euclidean norm of a standard Gaussian pair:
/// alpha_{a,b} = E[ |(Z1,Z2)| H_a(Z1) H_b(Z2) ] for even a, b.
///
/// Evaluated from the closed form
///   sqrt(pi/2) (2p)!(2q)! / (p! q! 2^(p+q)) * P_{p+q}(1/4),   a = 2p, b = 2q,
///   P_N(x) = sum_j (-1)^(j+N) C(N,j) (2j+1)!/(j!)^2 x^j,
/// where the alternating sum is accumulated in exact rational arithmetic and
/// rounded to double once at the end.
double alpha_coefficient(int a, int b);

/// Direct numerical evaluation of the defining integral of alpha_{a,b}
///   (1/2pi) iint sqrt(y^2+z^2) H_a(y) H_b(z) exp(-(y^2+z^2)/2) dy dz
/// used as an oracle for alpha_coefficient.
///
/// The integral is taken in polar coordinates over the disc of radius 12:
/// the angular integrand is a trigonometric polynomial of degree a+b, so an
/// equispaced rule with more than a+b+1 nodes is exact, and the radial
/// integrand r^2 p(r) exp(-r^2/2) is smooth on [0, 12], where composite
/// Gauss-Legendre converges geometrically. The discarded tail is bounded by
/// C_{a,b} * 12^(a+b+1) * exp(-72) < 1e-15 for a+b <= 12. Cartesian
/// quadrature would see the cone singularity of sqrt(y^2+z^2) at the origin.
///
/// Requires even a, b with a+b <= 12; throws InvalidArgument otherwise.
double alpha_quadrature_oracle(int a, int b);

/// alpha and beta values up to a maximum even order, built once and shared.
struct CoefficientTable {
    int max_order = 0;
    std::map<std::pair<int, int>, double> alpha;  ///< (a, b) -> alpha_{a,b}, a + b <= max_order
    std::map<int, double> beta;                   ///< l -> beta_l, even l <= max_order

    static CoefficientTable build(int max_order);

    double alpha_at(int a, int b) const;
    double beta_at(int l) const;
};

}  // namespace torus_waves
