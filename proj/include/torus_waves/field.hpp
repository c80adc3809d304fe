#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "torus_waves/lattice.hpp"
#include "torus_waves/rng.hpp"

namespace torus_waves {

struct SeedRecord {
    std::uint64_t master_seed = 0;
    std::int64_t n = 0;
    std::uint64_t replication = 0;
};

/// One draw of the coefficient family {a_lambda}. Only the half-lattice
/// values are stored; a_{-lambda} = conj(a_lambda) is implied.
class WaveCoefficients {
public:
    WaveCoefficients(std::shared_ptr<const LatticeCircle> circle,
                     std::vector<std::complex<double>> half_values,
                     std::optional<SeedRecord> seed = std::nullopt);

    /// Every half coefficient set to `value` (test injection).
    static WaveCoefficients constant(std::shared_ptr<const LatticeCircle> circle,
                                     std::complex<double> value);

    const LatticeCircle& circle() const noexcept { return *circle_; }
    const std::shared_ptr<const LatticeCircle>& circle_ptr() const noexcept { return circle_; }
    std::span<const std::complex<double>> half_values() const noexcept { return half_; }
    const std::optional<SeedRecord>& seed() const noexcept { return seed_; }

    /// a_lambda for circle().points[index].
    std::complex<double> at(std::size_t index) const;

    /// |a_lambda|^2 over the full lattice, in circle().points order.
    std::vector<double> squared_moduli() const;

    /// Coefficients of x -> T(x + shift): a_lambda e(<lambda, shift>).
    WaveCoefficients translated(double shift1, double shift2) const;

private:
    std::shared_ptr<const LatticeCircle> circle_;
    std::vector<std::complex<double>> half_;
    std::optional<SeedRecord> seed_;
};

WaveCoefficients sample_coefficients(std::shared_ptr<const LatticeCircle> circle,
                                     RandomStream& rng);

/// Draws from the stream keyed by (master_seed, n, replication).
WaveCoefficients sample_coefficients(std::shared_ptr<const LatticeCircle> circle,
                                     std::uint64_t master_seed, std::uint64_t replication);

struct FieldPoint {
    double value = 0.0;
    std::array<double, 2> grad{};  ///< normalized: each coordinate has unit variance
};

FieldPoint evaluate(const WaveCoefficients& coeffs, double x1, double x2);

/// The synthesis sum over the full lattice without using the symmetry;
/// its imaginary part is rounding noise.
std::complex<double> evaluate_complex(const WaveCoefficients& coeffs, double x1, double x2);

enum class GridChannels { values_only, values_and_gradient };

/// Samples on the M x M grid x = (i/M, j/M), row-major with i the row:
/// values[i * M + j]. grad1/grad2 are empty for GridChannels::values_only.
struct FieldGrid {
    std::size_t resolution = 0;
    std::vector<double> values;
    std::vector<double> grad1;
    std::vector<double> grad2;

    bool has_gradient() const noexcept { return !grad1.empty(); }
    double value(std::size_t i, std::size_t j) const { return values[i * resolution + j]; }
};

/// Smallest admissible grid, 2 ceil(sqrt(n)) + 1.
std::size_t minimum_resolution(std::int64_t n);
std::int64_t ceil_sqrt(std::int64_t n);

/// Throws ResolutionTooLow when M < minimum_resolution(n).
FieldGrid evaluate_grid(const WaveCoefficients& coeffs, std::size_t M,
                        GridChannels channels = GridChannels::values_and_gradient);

/// Same grid from the direct O(M^2 N) trigonometric sum, one term at a time.
FieldGrid evaluate_grid_reference(const WaveCoefficients& coeffs, std::size_t M,
                                  GridChannels channels = GridChannels::values_and_gradient);

/// r_n(x) = (1/N) sum cos(2 pi <lambda, x>).
double covariance(const LatticeCircle& circle, double x1, double x2);

}  // namespace torus_waves
