#pragma once

// Low-level grid kernels. Each comes as a serial reference and an OpenMP
// version; both reduce per-row partial sums in row order, so results are
// identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace torus_waves::kernels {

/// Half-lattice terms of a real trigonometric polynomial
///   f(x) = sum_h Re( c_h e(k1_h x1 + k2_h x2) ),
/// stored as structure-of-arrays.
struct SpectralTerms {
    std::vector<std::int64_t> k1;
    std::vector<std::int64_t> k2;
    std::vector<double> re;
    std::vector<double> im;
    double gradient_scale = 0.0;  ///< multiplies k_j in the derivative channels

    std::size_t size() const noexcept { return re.size(); }
};

/// Output buffers of size M*M; grad1/grad2 may be empty to skip them.
struct GridBuffers {
    std::span<double> values;
    std::span<double> grad1;
    std::span<double> grad2;
};

/// Direct sum with one cosine/sine pair per term and node.
void synthesize_serial(const SpectralTerms& terms, std::size_t M, GridBuffers out);

/// Separable phase tables: e(k1 i/M + k2 j/M) = e(k1 i/M) e(k2 j/M), one
/// complex multiply per term and row, rows distributed over threads.
void synthesize_parallel(const SpectralTerms& terms, std::size_t M, GridBuffers out);

/// Total length of the level set {f = level} of the periodic bilinear
/// interpolant of an M x M grid sampled with spacing 1/M. Saddle cells are
/// split according to the average of the four corners.
double isoline_length_serial(std::span<const double> values, std::size_t M, double level);
double isoline_length_parallel(std::span<const double> values, std::size_t M, double level);

/// (1/2eps) times the integral over the torus of 1{|f| <= eps} |grad f| for
/// the piecewise-linear interpolant of the grid (each cell split along its
/// (0,0)-(1,1) diagonal), integrated exactly triangle by triangle.
double band_integral_serial(std::span<const double> values, std::size_t M, double eps);
double band_integral_parallel(std::span<const double> values, std::size_t M, double eps);

/// sum_{r < rows} row_fn(r), computed in parallel and added in row order.
template <typename RowFn>
double ordered_row_sum(std::size_t rows, RowFn&& row_fn) {
    std::vector<double> partial(rows, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
        partial[static_cast<std::size_t>(r)] = row_fn(static_cast<std::size_t>(r));
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

/// Applies TORUS_WAVES_THREADS (a positive integer) to the OpenMP pool.
/// Returns the thread count in effect afterwards.
int configure_threads_from_env();

}  // namespace torus_waves::kernels
