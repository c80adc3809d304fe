#include "torus_waves/hermite.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "torus_waves/errors.hpp"

namespace torus_waves {

namespace mp = boost::multiprecision;

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

template <typename T>
T hermite_t(int k, T t) {
    if (k == 0) return T(1);
    T prev = T(1);
    T cur = t;
    for (int j = 2; j <= k; ++j) {
        const T next = t * cur - T(j - 1) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

mp::cpp_int factorial(int k) {
    mp::cpp_int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// P_N(1/4) exactly. The odd swinging factorial (2j+1)!/(j!)^2 is advanced
// incrementally: s_{j+1} = s_j (2j+2)(2j+3)/(j+1)^2 = s_j * 2(2j+3)/(j+1).
mp::cpp_rational p_quarter(int order) {
    mp::cpp_rational sum = 0;
    mp::cpp_int binom = 1;
    mp::cpp_rational swing = 1;
    mp::cpp_int four_pow = 1;
    for (int j = 0; j <= order; ++j) {
        mp::cpp_rational term = swing * mp::cpp_rational(binom, four_pow);
        if ((j + order) % 2 != 0) term = -term;
        sum += term;
        binom = binom * (order - j) / (j + 1);
        swing *= mp::cpp_rational(2 * (2 * j + 3), j + 1);
        four_pow *= 4;
    }
    return sum;
}

}  // namespace

double hermite(int k, double t) {
    if (k < 0) throw InvalidArgument("hermite: negative degree");
    return hermite_t<double>(k, t);
}

void hermite_all(double t, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() > 1) out[1] = t;
    for (std::size_t k = 2; k < out.size(); ++k) {
        out[k] = t * out[k - 1] - static_cast<double>(k - 1) * out[k - 2];
    }
}

double gaussian_density(double t) { return kInvSqrt2Pi * std::exp(-0.5 * t * t); }

double beta_coefficient(int l) {
    if (l < 0) throw InvalidArgument("beta_coefficient: negative index");
    if (l % 2 != 0) throw OddIndex("beta_coefficient: index " + std::to_string(l) + " is odd");
    return hermite(l, 0.0) * kInvSqrt2Pi;
}

double beta_eps(int l, double eps) {
    if (l < 0) throw InvalidArgument("beta_eps: negative index");
    if (!(eps > 0.0)) throw InvalidArgument("beta_eps: eps must be positive");
    if (l == 0) return std::erf(eps / std::numbers::sqrt2) / (2.0 * eps);
    if (l % 2 != 0) return 0.0;
    return -gaussian_density(eps) * (hermite(l - 1, eps) - hermite(l - 1, -eps)) / (2.0 * eps);
}

double alpha_coefficient(int a, int b) {
    if (a < 0 || b < 0 || a % 2 != 0 || b % 2 != 0) {
        throw OddIndex("alpha_coefficient: indices must be even and nonnegative");
    }
    const int p = a / 2;
    const int q = b / 2;
    const mp::cpp_int prefactor = factorial(a) * factorial(b) / (factorial(p) * factorial(q));
    const mp::cpp_rational exact =
        mp::cpp_rational(prefactor, mp::cpp_int(1) << (p + q)) * p_quarter(p + q);
    return std::sqrt(std::numbers::pi / 2.0) * exact.convert_to<double>();
}

double alpha_quadrature_oracle(int a, int b) {
    if (a < 0 || b < 0 || a % 2 != 0 || b % 2 != 0 || a + b > 12) {
        throw InvalidArgument("alpha_quadrature_oracle: needs even a, b with a + b <= 12");
    }
    using real = long double;
    constexpr int kAngles = 64;
    constexpr int kPanels = 48;
    constexpr real kRadius = 12.0L;
    const real two_pi = 2.0L * std::numbers::pi_v<real>;

    std::array<real, kAngles> cosines{};
    std::array<real, kAngles> sines{};
    for (int k = 0; k < kAngles; ++k) {
        cosines[k] = std::cos(two_pi * k / kAngles);
        sines[k] = std::sin(two_pi * k / kAngles);
    }

    // Mean over the circle of H_a(r cos t) H_b(r sin t).
    auto angular_mean = [&](real r) {
        real sum = 0.0L;
        for (int k = 0; k < kAngles; ++k) {
            sum += hermite_t<real>(a, r * cosines[k]) * hermite_t<real>(b, r * sines[k]);
        }
        return sum / kAngles;
    };

    // (1/2pi) int_0^R int_0^2pi r * H_a H_b e^{-r^2/2} r dt dr
    //   = int_0^R r^2 e^{-r^2/2} <H_a H_b>_circle dr
    const real width = kRadius / kPanels;
    real total = 0.0L;
    for (int panel = 0; panel < kPanels; ++panel) {
        const real lo = panel * width;
        const real hi = lo + width;
        total += boost::math::quadrature::gauss<real, 30>::integrate(
            [&](real r) { return r * r * std::exp(-0.5L * r * r) * angular_mean(r); }, lo, hi);
    }
    return static_cast<double>(total);
}

CoefficientTable CoefficientTable::build(int max_order) {
    if (max_order < 0 || max_order % 2 != 0) {
        throw InvalidArgument("CoefficientTable: max_order must be even and nonnegative");
    }
    CoefficientTable table;
    table.max_order = max_order;
    for (int l = 0; l <= max_order; l += 2) table.beta[l] = beta_coefficient(l);
    for (int a = 0; a <= max_order; a += 2) {
        for (int b = 0; a + b <= max_order; b += 2) {
            table.alpha[{a, b}] = (b < a) ? table.alpha.at({b, a}) : alpha_coefficient(a, b);
        }
    }
    return table;
}

double CoefficientTable::alpha_at(int a, int b) const {
    const auto it = alpha.find({a, b});
    if (it == alpha.end()) {
        throw InvalidArgument("CoefficientTable: alpha(" + std::to_string(a) + "," +
                              std::to_string(b) + ") not tabulated");
    }
    return it->second;
}

double CoefficientTable::beta_at(int l) const {
    const auto it = beta.find(l);
    if (it == beta.end()) {
        throw InvalidArgument("CoefficientTable: beta(" + std::to_string(l) + ") not tabulated");
    }
    return it->second;
}

}  // namespace torus_waves
