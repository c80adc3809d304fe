#include "torus_waves/nodal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "torus_waves/errors.hpp"
#include "torus_waves/kernels.hpp"

namespace torus_waves {

std::string_view to_string(LengthMethod method) noexcept {
    return method == LengthMethod::marching_squares ? "ms" : "band";
}

LengthEstimate nodal_length_ms(const FieldGrid& grid, double u) {
    if (grid.resolution < 2 || grid.values.size() != grid.resolution * grid.resolution) {
        throw InvalidArgument("nodal_length_ms: malformed grid");
    }
    LengthEstimate est;
    est.value = kernels::isoline_length_parallel(grid.values, grid.resolution, u);
    est.method = LengthMethod::marching_squares;
    est.resolution = grid.resolution;
    return est;
}

LengthEstimate band_length(const WaveCoefficients& coeffs, double eps, std::size_t M) {
    if (!(eps > 0.0)) throw InvalidArgument("band_length: eps must be positive");
    const std::int64_t n = coeffs.circle().n;
    const auto needed = static_cast<std::size_t>(8 * ceil_sqrt(n));
    if (M < needed) {
        throw ResolutionTooLow("band_length: M = " + std::to_string(M) + " below 8 ceil(sqrt(n)) = " +
                               std::to_string(needed));
    }
    return band_length(evaluate_grid(coeffs, M, GridChannels::values_only), eps, n);
}

LengthEstimate band_length(const FieldGrid& grid, double eps, std::int64_t n) {
    if (!(eps > 0.0)) throw InvalidArgument("band_length: eps must be positive");
    LengthEstimate est;
    est.value = kernels::band_integral_parallel(grid.values, grid.resolution, eps);
    est.method = LengthMethod::eps_band;
    est.resolution = grid.resolution;
    est.eps = eps;

    const double bound = 12.0 * 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(n));
    if (est.value > bound * (1.0 + 1e-9)) {
        throw BoundViolation("band_length: " + std::to_string(est.value) +
                             " exceeds 12 sqrt(E) = " + std::to_string(bound));
    }
    return est;
}

double expected_nodal_length(std::int64_t n) {
    return std::numbers::pi * std::sqrt(static_cast<double>(n) / 2.0);
}

std::size_t default_resolution(std::int64_t n, std::size_t factor) {
    return factor * static_cast<std::size_t>(ceil_sqrt(n));
}

}  // namespace torus_waves
