#include "torus_waves/kernels.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <utility>

namespace torus_waves::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t positive_mod(std::int64_t a, std::size_t M) {
    const auto m = static_cast<std::int64_t>(M);
    const std::int64_t r = a % m;
    return static_cast<std::size_t>(r < 0 ? r + m : r);
}

// cos/sin of 2 pi k t / M for t = 0..M-1, one row of M entries per term.
void phase_table(std::span<const std::int64_t> k, std::size_t M, std::vector<double>& cos_out,
                 std::vector<double>& sin_out) {
    cos_out.resize(k.size() * M);
    sin_out.resize(k.size() * M);
    for (std::size_t h = 0; h < k.size(); ++h) {
        const std::size_t step = positive_mod(k[h], M);
        std::size_t r = 0;
        for (std::size_t t = 0; t < M; ++t) {
            const double angle = kTwoPi * static_cast<double>(r) / static_cast<double>(M);
            cos_out[h * M + t] = std::cos(angle);
            sin_out[h * M + t] = std::sin(angle);
            r += step;
            if (r >= M) r -= M;
        }
    }
}

// Crossing parameter of the level on the edge from value a to value b.
inline double crossing(double a, double b) { return a / (a - b); }

inline double segment(double x0, double y0, double x1, double y1) {
    return std::hypot(x1 - x0, y1 - y0);
}

// Isoline length inside one unit cell with corner values (already shifted by
// the level) f00 at (0,0), f10 at (1,0), f01 at (0,1), f11 at (1,1).
inline double cell_length(double f00, double f10, double f01, double f11) {
    const bool a00 = f00 > 0.0;
    const bool a10 = f10 > 0.0;
    const bool a01 = f01 > 0.0;
    const bool a11 = f11 > 0.0;
    const bool bottom = a00 != a10;  // t = 0
    const bool right = a10 != a11;   // s = 1
    const bool top = a01 != a11;     // t = 1
    const bool left = a00 != a01;    // s = 0
    const int crossings = bottom + right + top + left;
    if (crossings == 0) return 0.0;

    const double sb = bottom ? crossing(f00, f10) : 0.0;
    const double tr = right ? crossing(f10, f11) : 0.0;
    const double st = top ? crossing(f01, f11) : 0.0;
    const double tl = left ? crossing(f00, f01) : 0.0;

    if (crossings == 4) {
        const bool centre = 0.25 * (f00 + f10 + f01 + f11) > 0.0;
        if (centre == a00) {
            // f00 and f11 connect through the centre; cut off corners (1,0) and (0,1).
            return segment(sb, 0.0, 1.0, tr) + segment(0.0, tl, st, 1.0);
        }
        return segment(sb, 0.0, 0.0, tl) + segment(1.0, tr, st, 1.0);
    }

    // Exactly two crossings.
    double px[2];
    double py[2];
    int m = 0;
    if (bottom) { px[m] = sb; py[m] = 0.0; ++m; }
    if (right) { px[m] = 1.0; py[m] = tr; ++m; }
    if (top) { px[m] = st; py[m] = 1.0; ++m; }
    if (left) { px[m] = 0.0; py[m] = tl; ++m; }
    return segment(px[0], py[0], px[1], py[1]);
}

double isoline_row(std::span<const double> v, std::size_t M, double level, std::size_t i) {
    const std::size_t i1 = (i + 1 == M) ? 0 : i + 1;
    const double* r0 = v.data() + i * M;
    const double* r1 = v.data() + i1 * M;
    double sum = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        const std::size_t j1 = (j + 1 == M) ? 0 : j + 1;
        sum += cell_length(r0[j] - level, r1[j] - level, r0[j1] - level, r1[j1] - level);
    }
    return sum;
}

// Fraction of a triangle on which a linear function with sorted vertex
// values a <= b <= c is at most t.
inline double below_fraction(double a, double b, double c, double t) {
    if (t <= a) return 0.0;
    if (t >= c) return 1.0;
    if (t <= b) return (t - a) * (t - a) / ((b - a) * (c - a));
    return 1.0 - (c - t) * (c - t) / ((c - a) * (c - b));
}

// |grad f| times the area fraction of {|f| <= eps}, for the linear
// interpolant on one triangle. The gradient is in cell units.
inline double triangle_band(double f0, double f1, double f2, double gx, double gy, double eps) {
    if (f0 > f1) std::swap(f0, f1);
    if (f1 > f2) std::swap(f1, f2);
    if (f0 > f1) std::swap(f0, f1);
    if (f0 > eps || f2 < -eps) return 0.0;
    return std::hypot(gx, gy) * (below_fraction(f0, f1, f2, eps) - below_fraction(f0, f1, f2, -eps));
}

double band_row(std::span<const double> v, std::size_t M, double eps, std::size_t i) {
    const std::size_t i1 = (i + 1 == M) ? 0 : i + 1;
    const double* r0 = v.data() + i * M;
    const double* r1 = v.data() + i1 * M;
    double sum = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        const std::size_t j1 = (j + 1 == M) ? 0 : j + 1;
        const double f00 = r0[j], f10 = r1[j], f01 = r0[j1], f11 = r1[j1];
        // Triangles (0,0)-(1,0)-(1,1) and (0,0)-(0,1)-(1,1).
        sum += triangle_band(f00, f10, f11, f10 - f00, f11 - f10, eps);
        sum += triangle_band(f00, f01, f11, f11 - f01, f01 - f00, eps);
    }
    return sum;
}

}  // namespace

void synthesize_serial(const SpectralTerms& terms, std::size_t M, GridBuffers out) {
    const bool gradients = !out.grad1.empty();
    const double m = static_cast<double>(M);
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            double value = 0.0;
            double d1 = 0.0;
            double d2 = 0.0;
            for (std::size_t h = 0; h < terms.size(); ++h) {
                const std::int64_t phase = terms.k1[h] * static_cast<std::int64_t>(i) +
                                           terms.k2[h] * static_cast<std::int64_t>(j);
                const double angle = kTwoPi * static_cast<double>(positive_mod(phase, M)) / m;
                const double c = std::cos(angle);
                const double s = std::sin(angle);
                value += terms.re[h] * c - terms.im[h] * s;
                if (gradients) {
                    const double q = terms.re[h] * s + terms.im[h] * c;
                    d1 -= terms.gradient_scale * static_cast<double>(terms.k1[h]) * q;
                    d2 -= terms.gradient_scale * static_cast<double>(terms.k2[h]) * q;
                }
            }
            out.values[i * M + j] = value;
            if (gradients) {
                out.grad1[i * M + j] = d1;
                out.grad2[i * M + j] = d2;
            }
        }
    }
}

void synthesize_parallel(const SpectralTerms& terms, std::size_t M, GridBuffers out) {
    const bool gradients = !out.grad1.empty();
    const std::size_t H = terms.size();
    std::vector<double> cos1, sin1, cos2, sin2;
    phase_table(terms.k1, M, cos1, sin1);
    phase_table(terms.k2, M, cos2, sin2);

    std::vector<double> a1(H), a2(H);
    for (std::size_t h = 0; h < H; ++h) {
        a1[h] = terms.gradient_scale * static_cast<double>(terms.k1[h]);
        a2[h] = terms.gradient_scale * static_cast<double>(terms.k2[h]);
    }

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t row = 0; row < static_cast<std::ptrdiff_t>(M); ++row) {
        const auto i = static_cast<std::size_t>(row);
        double* __restrict val = out.values.data() + i * M;
        std::memset(val, 0, M * sizeof(double));
        double* __restrict d1 = gradients ? out.grad1.data() + i * M : nullptr;
        double* __restrict d2 = gradients ? out.grad2.data() + i * M : nullptr;
        if (gradients) {
            std::memset(d1, 0, M * sizeof(double));
            std::memset(d2, 0, M * sizeof(double));
        }
        for (std::size_t h = 0; h < H; ++h) {
            const double c1 = cos1[h * M + i];
            const double s1 = sin1[h * M + i];
            const double wr = terms.re[h] * c1 - terms.im[h] * s1;
            const double wi = terms.re[h] * s1 + terms.im[h] * c1;
            const double* __restrict c2 = cos2.data() + h * M;
            const double* __restrict s2 = sin2.data() + h * M;
            if (gradients) {
                const double g1 = a1[h];
                const double g2 = a2[h];
#pragma omp simd
                for (std::size_t j = 0; j < M; ++j) {
                    val[j] += wr * c2[j] - wi * s2[j];
                    const double q = wr * s2[j] + wi * c2[j];
                    d1[j] -= g1 * q;
                    d2[j] -= g2 * q;
                }
            } else {
#pragma omp simd
                for (std::size_t j = 0; j < M; ++j) val[j] += wr * c2[j] - wi * s2[j];
            }
        }
    }
}

double isoline_length_serial(std::span<const double> values, std::size_t M, double level) {
    std::vector<double> partial(M);
    for (std::size_t i = 0; i < M; ++i) partial[i] = isoline_row(values, M, level, i);
    double total = 0.0;
    for (double p : partial) total += p;
    return total / static_cast<double>(M);
}

double isoline_length_parallel(std::span<const double> values, std::size_t M, double level) {
    return ordered_row_sum(M, [&](std::size_t i) { return isoline_row(values, M, level, i); }) /
           static_cast<double>(M);
}

double band_integral_serial(std::span<const double> values, std::size_t M, double eps) {
    std::vector<double> partial(M);
    for (std::size_t i = 0; i < M; ++i) partial[i] = band_row(values, M, eps, i);
    double total = 0.0;
    for (double p : partial) total += p;
    return total / (4.0 * eps * static_cast<double>(M));
}

double band_integral_parallel(std::span<const double> values, std::size_t M, double eps) {
    return ordered_row_sum(M, [&](std::size_t i) { return band_row(values, M, eps, i); }) /
           (4.0 * eps * static_cast<double>(M));
}

int configure_threads_from_env() {
    if (const char* env = std::getenv("TORUS_WAVES_THREADS")) {
        int threads = 0;
        const char* end = env + std::strlen(env);
        const auto [ptr, ec] = std::from_chars(env, end, threads);
        if (ec == std::errc{} && ptr == end && threads > 0) omp_set_num_threads(threads);
    }
    return omp_get_max_threads();
}

}  // namespace torus_waves::kernels
