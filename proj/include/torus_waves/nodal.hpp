#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "torus_waves/field.hpp"

namespace torus_waves {

enum class LengthMethod { marching_squares, eps_band };

std::string_view to_string(LengthMethod method) noexcept;

struct LengthEstimate {
    double value = 0.0;  ///< length in torus units
    LengthMethod method = LengthMethod::marching_squares;
    std::size_t resolution = 0;
    std::optional<double> eps;
};

/// Length of {T = u} from the periodic bilinear interpolant of the grid.
LengthEstimate nodal_length_ms(const FieldGrid& grid, double u = 0.0);

/// (1/2eps) times the torus integral of 1{|T| <= eps} |grad T|, integrated
/// exactly for the piecewise-linear interpolant of the M x M grid. Sampling
/// the indicator at nodes alone is too noisy: the band is thinner than a cell.
/// Requires eps > 0 and M >= 8 ceil(sqrt(n)) (ResolutionTooLow otherwise).
/// Throws BoundViolation if the result exceeds 12 sqrt(E_n).
LengthEstimate band_length(const WaveCoefficients& coeffs, double eps, std::size_t M);

/// Same quadrature on an existing grid of the field with eigenvalue index n.
LengthEstimate band_length(const FieldGrid& grid, double eps, std::int64_t n);

/// sqrt(E_n) / (2 sqrt 2) = pi sqrt(n/2).
double expected_nodal_length(std::int64_t n);

/// factor * ceil(sqrt(n)); 16 is the default used everywhere.
std::size_t default_resolution(std::int64_t n, std::size_t factor = 16);

}  // namespace torus_waves
