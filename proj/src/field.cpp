#include "torus_waves/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "torus_waves/errors.hpp"
#include "torus_waves/kernels.hpp"

namespace torus_waves {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

kernels::SpectralTerms spectral_terms(const WaveCoefficients& coeffs) {
    const LatticeCircle& circle = coeffs.circle();
    const double scale = 2.0 / std::sqrt(static_cast<double>(circle.cardinality()));
    kernels::SpectralTerms terms;
    const auto half = coeffs.half_values();
    terms.k1.reserve(half.size());
    for (std::size_t h = 0; h < half.size(); ++h) {
        terms.k1.push_back(circle.half_points[h].x);
        terms.k2.push_back(circle.half_points[h].y);
        terms.re.push_back(scale * half[h].real());
        terms.im.push_back(scale * half[h].imag());
    }
    terms.gradient_scale = std::sqrt(2.0 / static_cast<double>(circle.n));
    return terms;
}

FieldGrid allocate(std::size_t M, GridChannels channels) {
    FieldGrid grid;
    grid.resolution = M;
    grid.values.resize(M * M);
    if (channels == GridChannels::values_and_gradient) {
        grid.grad1.resize(M * M);
        grid.grad2.resize(M * M);
    }
    return grid;
}

void check_resolution(const WaveCoefficients& coeffs, std::size_t M) {
    const std::size_t needed = minimum_resolution(coeffs.circle().n);
    if (M < needed) {
        throw ResolutionTooLow("grid resolution " + std::to_string(M) + " below " +
                               std::to_string(needed) + " for n = " +
                               std::to_string(coeffs.circle().n));
    }
}

}  // namespace

WaveCoefficients::WaveCoefficients(std::shared_ptr<const LatticeCircle> circle,
                                   std::vector<std::complex<double>> half_values,
                                   std::optional<SeedRecord> seed)
    : circle_(std::move(circle)), half_(std::move(half_values)), seed_(seed) {
    if (!circle_) throw InvalidArgument("WaveCoefficients: null circle");
    if (half_.size() != circle_->half_points.size()) {
        throw InvalidArgument("WaveCoefficients: expected " +
                              std::to_string(circle_->half_points.size()) +
                              " half-lattice values, got " + std::to_string(half_.size()));
    }
}

WaveCoefficients WaveCoefficients::constant(std::shared_ptr<const LatticeCircle> circle,
                                            std::complex<double> value) {
    const std::size_t count = circle ? circle->half_points.size() : 0;
    return WaveCoefficients(std::move(circle), std::vector<std::complex<double>>(count, value));
}

std::complex<double> WaveCoefficients::at(std::size_t index) const {
    const std::complex<double> a = half_[circle_->half_index.at(index)];
    return circle_->is_mirror[index] ? std::conj(a) : a;
}

std::vector<double> WaveCoefficients::squared_moduli() const {
    std::vector<double> s(circle_->cardinality());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::norm(half_[circle_->half_index[i]]);
    return s;
}

WaveCoefficients WaveCoefficients::translated(double shift1, double shift2) const {
    std::vector<std::complex<double>> shifted(half_.size());
    for (std::size_t h = 0; h < half_.size(); ++h) {
        const auto& p = circle_->half_points[h];
        const double angle =
            kTwoPi * (static_cast<double>(p.x) * shift1 + static_cast<double>(p.y) * shift2);
        shifted[h] = half_[h] * std::polar(1.0, angle);
    }
    return WaveCoefficients(circle_, std::move(shifted));
}

WaveCoefficients sample_coefficients(std::shared_ptr<const LatticeCircle> circle,
                                     RandomStream& rng) {
    if (!circle) throw InvalidArgument("sample_coefficients: null circle");
    const double sd = std::sqrt(0.5);
    std::vector<std::complex<double>> half(circle->half_points.size());
    for (auto& a : half) {
        const double re = sd * rng.normal();
        const double im = sd * rng.normal();
        a = {re, im};
    }
    return WaveCoefficients(std::move(circle), std::move(half));
}

WaveCoefficients sample_coefficients(std::shared_ptr<const LatticeCircle> circle,
                                     std::uint64_t master_seed, std::uint64_t replication) {
    if (!circle) throw InvalidArgument("sample_coefficients: null circle");
    const auto n = static_cast<std::uint64_t>(circle->n);
    RandomStream rng(master_seed, n, replication);
    WaveCoefficients drawn = sample_coefficients(circle, rng);
    return WaveCoefficients(std::move(circle),
                            {drawn.half_values().begin(), drawn.half_values().end()},
                            SeedRecord{master_seed, static_cast<std::int64_t>(n), replication});
}

FieldPoint evaluate(const WaveCoefficients& coeffs, double x1, double x2) {
    const kernels::SpectralTerms terms = spectral_terms(coeffs);
    FieldPoint out;
    for (std::size_t h = 0; h < terms.size(); ++h) {
        const double angle = kTwoPi * (static_cast<double>(terms.k1[h]) * x1 +
                                       static_cast<double>(terms.k2[h]) * x2);
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        const double wr = terms.re[h] * c - terms.im[h] * s;
        const double wi = terms.re[h] * s + terms.im[h] * c;
        out.value += wr;
        out.grad[0] -= terms.gradient_scale * static_cast<double>(terms.k1[h]) * wi;
        out.grad[1] -= terms.gradient_scale * static_cast<double>(terms.k2[h]) * wi;
    }
    return out;
}

std::complex<double> evaluate_complex(const WaveCoefficients& coeffs, double x1, double x2) {
    const LatticeCircle& circle = coeffs.circle();
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < circle.cardinality(); ++i) {
        const auto& p = circle.points[i];
        const double angle =
            kTwoPi * (static_cast<double>(p.x) * x1 + static_cast<double>(p.y) * x2);
        sum += coeffs.at(i) * std::polar(1.0, angle);
    }
    return sum / std::sqrt(static_cast<double>(circle.cardinality()));
}

std::int64_t ceil_sqrt(std::int64_t n) {
    if (n <= 0) return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r < n) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= n) --r;
    return r;
}

std::size_t minimum_resolution(std::int64_t n) {
    return static_cast<std::size_t>(2 * ceil_sqrt(n) + 1);
}

FieldGrid evaluate_grid(const WaveCoefficients& coeffs, std::size_t M, GridChannels channels) {
    check_resolution(coeffs, M);
    FieldGrid grid = allocate(M, channels);
    kernels::synthesize_parallel(spectral_terms(coeffs), M,
                                 {grid.values, grid.grad1, grid.grad2});
    return grid;
}

FieldGrid evaluate_grid_reference(const WaveCoefficients& coeffs, std::size_t M,
                                  GridChannels channels) {
    check_resolution(coeffs, M);
    FieldGrid grid = allocate(M, channels);
    kernels::synthesize_serial(spectral_terms(coeffs), M, {grid.values, grid.grad1, grid.grad2});
    return grid;
}

double covariance(const LatticeCircle& circle, double x1, double x2) {
    double sum = 0.0;
    for (const auto& p : circle.points) {
        sum += std::cos(kTwoPi * (static_cast<double>(p.x) * x1 + static_cast<double>(p.y) * x2));
    }
    return sum / static_cast<double>(circle.cardinality());
}

}  // namespace torus_waves
