#include "torus_waves/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "torus_waves/errors.hpp"

namespace torus_waves {

namespace {

__extension__ typedef __int128 int128;

std::int64_t isqrt(std::int64_t v) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

bool in_upper_half(const LatticePoint& p) { return p.y > 0 || (p.y == 0 && p.x > 0); }

}  // namespace

double LatticeCircle::energy() const noexcept {
    return 4.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(n);
}

bool is_sum_of_two_squares(std::int64_t n) {
    if (n < 1) return false;
    const std::int64_t root = isqrt(n);
    for (std::int64_t a = 0; a <= root; ++a) {
        const std::int64_t rest = n - a * a;
        const std::int64_t b = isqrt(rest);
        if (b * b == rest) return true;
    }
    return false;
}

LatticeCircle enumerate_circle(std::int64_t n) {
    if (n < 1) throw InvalidArgument("enumerate_circle: n must be >= 1, got " + std::to_string(n));

    LatticeCircle circle;
    circle.n = n;
    const std::int64_t root = isqrt(n);
    for (std::int64_t a = 0; a <= root; ++a) {
        const std::int64_t rest = n - a * a;
        const std::int64_t b = isqrt(rest);
        if (b * b != rest) continue;
        for (std::int64_t sa : {a, -a}) {
            for (std::int64_t sb : {b, -b}) {
                circle.points.push_back({sa, sb});
                if (b == 0) break;
            }
            if (a == 0) break;
        }
    }
    if (circle.points.empty()) {
        throw NotSumOfTwoSquares(std::to_string(n) + " is not a sum of two squares");
    }
    std::sort(circle.points.begin(), circle.points.end());

    for (const auto& p : circle.points) {
        if (in_upper_half(p)) circle.half_points.push_back(p);
    }
    circle.half_index.resize(circle.points.size());
    circle.is_mirror.resize(circle.points.size());
    for (std::size_t i = 0; i < circle.points.size(); ++i) {
        const auto& p = circle.points[i];
        const bool mirror = !in_upper_half(p);
        const LatticePoint rep = mirror ? LatticePoint{-p.x, -p.y} : p;
        const auto it = std::lower_bound(circle.half_points.begin(), circle.half_points.end(), rep);
        circle.half_index[i] = static_cast<std::size_t>(it - circle.half_points.begin());
        circle.is_mirror[i] = mirror;
    }
    return circle;
}

std::complex<double> fourier_coefficient(const LatticeCircle& circle, int k) {
    const auto N = static_cast<double>(circle.cardinality());
    const int power = std::abs(k);
    const double log2_radius = 0.5 * std::log2(static_cast<double>(circle.n));

    // (lambda/sqrt(n))^(-k) = conj(lambda)^k / n^(k/2) for k >= 0 and
    // lambda^|k| / n^(|k|/2) otherwise. Integer powers are exact while they fit.
    if (power * log2_radius < 120.0) {
        int128 re_sum = 0;
        int128 im_sum = 0;
        for (const auto& p : circle.points) {
            int128 re = 1;
            int128 im = 0;
            const int128 px = p.x;
            const int128 py = k >= 0 ? -p.y : p.y;
            for (int i = 0; i < power; ++i) {
                const int128 nr = re * px - im * py;
                const int128 ni = re * py + im * px;
                re = nr;
                im = ni;
            }
            re_sum += re;
            im_sum += im;
        }
        const double scale = std::pow(static_cast<double>(circle.n), 0.5 * power) * N;
        return {static_cast<double>(re_sum) / scale, static_cast<double>(im_sum) / scale};
    }

    std::complex<double> sum = 0.0;
    const double radius = std::sqrt(static_cast<double>(circle.n));
    for (const auto& p : circle.points) {
        const std::complex<double> z(static_cast<double>(p.x) / radius,
                                     static_cast<double>(p.y) / radius);
        sum += std::pow(k >= 0 ? std::conj(z) : z, power);
    }
    return sum / N;
}

double fourier_coefficient4(const LatticeCircle& circle) {
    int128 sum = 0;
    for (const auto& p : circle.points) {
        const int128 x2 = static_cast<int128>(p.x) * p.x;
        const int128 y2 = static_cast<int128>(p.y) * p.y;
        sum += x2 * x2 + y2 * y2 - 6 * x2 * y2;
    }
    const double n = static_cast<double>(circle.n);
    return static_cast<double>(sum) / (n * n * static_cast<double>(circle.cardinality()));
}

std::vector<EtaMatch> search_eta(double target, std::int64_t n_min, std::int64_t n_max,
                                 double tolerance) {
    if (!(target >= 0.0 && target <= 1.0)) {
        throw InvalidTarget("search_eta: target must lie in [0, 1]");
    }
    if (n_min > n_max) throw InvalidArgument("search_eta: n_min > n_max");

    std::vector<EtaMatch> matches;
    for (std::int64_t n = std::max<std::int64_t>(n_min, 1); n <= n_max; ++n) {
        if (!is_sum_of_two_squares(n)) continue;
        const LatticeCircle circle = enumerate_circle(n);
        const double mu4 = fourier_coefficient4(circle);
        if (std::abs(std::abs(mu4) - target) <= tolerance) {
            matches.push_back({n, circle.cardinality(), mu4});
        }
    }
    return matches;
}

}  // namespace torus_waves
