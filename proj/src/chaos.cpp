#include "torus_waves/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "torus_waves/errors.hpp"
#include "torus_waves/kernels.hpp"

namespace torus_waves {

namespace {

const CoefficientTable& fourth_order_table() {
    static const CoefficientTable table = CoefficientTable::build(4);
    return table;
}

// 2 pi sqrt(n/2) = sqrt(E/2)
double length_scale(double n) { return 2.0 * std::numbers::pi * std::sqrt(n / 2.0); }

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::string describe(HermiteTriple t) {
    return "(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + ")";
}

struct ExpansionTerm {
    HermiteTriple triple;
    double weight;
};

// Terms of the order-2q projection: alpha_{2k,2u-2k} beta_{2q-2u} /
// ((2k)! (2u-2k)! (2q-2u)!) in front of H_{2q-2u}(T) H_{2k}(d1) H_{2u-2k}(d2).
std::vector<ExpansionTerm> expansion_terms(int q, const CoefficientTable& table) {
    std::vector<ExpansionTerm> terms;
    for (int u = 0; u <= q; ++u) {
        for (int k = 0; k <= u; ++k) {
            const int a = 2 * q - 2 * u;
            const int b = 2 * k;
            const int c = 2 * u - 2 * k;
            const double w = table.alpha_at(b, c) * table.beta_at(a) /
                             (factorial(b) * factorial(c) * factorial(a));
            terms.push_back({{a, b, c}, w});
        }
    }
    return terms;
}

}  // namespace

LatticeMoments LatticeMoments::of(const WaveCoefficients& coeffs) {
    const LatticeCircle& circle = coeffs.circle();
    LatticeMoments m;
    m.N = static_cast<double>(circle.cardinality());
    m.n = static_cast<double>(circle.n);
    const std::vector<double> s = coeffs.squared_moduli();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double x = static_cast<double>(circle.points[i].x);
        const double y = static_cast<double>(circle.points[i].y);
        const double x2 = x * x;
        const double y2 = y * y;
        const double s2 = s[i] * s[i];
        m.S += s[i];
        m.Q += s2;
        m.S11 += x2 * s[i];
        m.S22 += y2 * s[i];
        m.S12 += x * y * s[i];
        m.Q11 += x2 * s2;
        m.Q22 += y2 * s2;
        m.Q1111 += x2 * x2 * s2;
        m.Q2222 += y2 * y2 * s2;
        m.Q1122 += x2 * y2 * s2;
    }
    return m;
}

std::array<double, 4> w_vector(const WaveCoefficients& coeffs) {
    const LatticeCircle& circle = coeffs.circle();
    const double n = static_cast<double>(circle.n);
    const auto half = coeffs.half_values();
    std::array<double, 4> w{};
    for (std::size_t h = 0; h < half.size(); ++h) {
        const double d = std::norm(half[h]) - 1.0;
        const double x = static_cast<double>(circle.half_points[h].x);
        const double y = static_cast<double>(circle.half_points[h].y);
        w[0] += d * n;
        w[1] += d * x * x;
        w[2] += d * y * y;
        w[3] += d * x * y;
    }
    const double scale = 1.0 / (n * std::sqrt(static_cast<double>(circle.cardinality()) / 2.0));
    for (double& v : w) v *= scale;
    return w;
}

double proj2(const WaveCoefficients& coeffs, const CoefficientTable& table) {
    const LatticeMoments m = LatticeMoments::of(coeffs);
    const double i_t = (m.S - m.N) / m.N;                 // int H2(T)
    const double i_d1 = 2.0 * m.S11 / (m.n * m.N) - 1.0;  // int H2(d1 T)
    const double i_d2 = 2.0 * m.S22 / (m.n * m.N) - 1.0;
    const double b0 = table.beta_at(0);
    const double b2 = table.beta_at(2);
    return length_scale(m.n) * (table.alpha_at(0, 0) * b2 / 2.0 * i_t +
                                table.alpha_at(0, 2) * b0 / 2.0 * i_d2 +
                                table.alpha_at(2, 0) * b0 / 2.0 * i_d1);
}

double proj2(const WaveCoefficients& coeffs) { return proj2(coeffs, fourth_order_table()); }

double proj2_level(const WaveCoefficients& coeffs, double u) {
    const LatticeCircle& circle = coeffs.circle();
    double centred = 0.0;
    for (double s : coeffs.squared_moduli()) centred += s - 1.0;
    centred /= static_cast<double>(circle.cardinality());
    return std::sqrt(circle.energy() / 2.0) * std::sqrt(std::numbers::pi / 8.0) *
           gaussian_density(u) * u * u * centred;
}

double hermite_integral(const LatticeMoments& m, HermiteTriple t) {
    const double N = m.N;
    const double n = m.n;
    const double N2 = N * N;
    if (t == HermiteTriple{4, 0, 0}) {
        return 3.0 * (m.S * m.S - m.Q) / N2 - 6.0 * m.S / N + 3.0;
    }
    if (t == HermiteTriple{0, 4, 0} || t == HermiteTriple{0, 0, 4}) {
        const double Sjj = t.b == 4 ? m.S11 : m.S22;
        const double Qjjjj = t.b == 4 ? m.Q1111 : m.Q2222;
        return 12.0 / (n * n * N2) * (Sjj * Sjj - Qjjjj) - 12.0 * Sjj / (n * N) + 3.0;
    }
    if (t == HermiteTriple{2, 2, 0} || t == HermiteTriple{2, 0, 2}) {
        const double Sjj = t.b == 2 ? m.S11 : m.S22;
        const double Qjj = t.b == 2 ? m.Q11 : m.Q22;
        return 2.0 / (n * N2) * (m.S * Sjj - Qjj) - m.S / N - 2.0 * Sjj / (n * N) + 1.0;
    }
    if (t == HermiteTriple{0, 2, 2}) {
        return 4.0 / (n * n * N2) * (m.S11 * m.S22 + 2.0 * m.S12 * m.S12 - 3.0 * m.Q1122) -
               2.0 * (m.S11 + m.S22) / (n * N) + 1.0;
    }
    throw UnsupportedTriple("hermite_integral: no closed form for triple " + describe(t));
}

double hermite_integral(const WaveCoefficients& coeffs, HermiteTriple triple) {
    return hermite_integral(LatticeMoments::of(coeffs), triple);
}

double hermite_grid_mean(const FieldGrid& grid, HermiteTriple t) {
    if (!grid.has_gradient() && (t.b != 0 || t.c != 0)) {
        throw InvalidArgument("hermite_grid_mean: grid has no gradient channels");
    }
    const std::size_t M = grid.resolution;
    const double sum = kernels::ordered_row_sum(M, [&](std::size_t i) {
        double row = 0.0;
        for (std::size_t idx = i * M; idx < (i + 1) * M; ++idx) {
            double term = hermite(t.a, grid.values[idx]);
            if (t.b != 0) term *= hermite(t.b, grid.grad1[idx]);
            if (t.c != 0) term *= hermite(t.c, grid.grad2[idx]);
            row += term;
        }
        return row;
    });
    return sum / static_cast<double>(M * M);
}

double hermite_integral_quadrature(const WaveCoefficients& coeffs, HermiteTriple t,
                                   std::size_t M) {
    if (t.a < 0 || t.b < 0 || t.c < 0) {
        throw UnsupportedTriple("hermite_integral_quadrature: negative index in " + describe(t));
    }
    const auto degree = static_cast<std::size_t>(t.a + t.b + t.c);
    const std::size_t needed =
        2 * std::max<std::size_t>(degree, 1) * static_cast<std::size_t>(ceil_sqrt(coeffs.circle().n)) + 1;
    if (M < needed) {
        throw ResolutionTooLow("hermite_integral_quadrature: M = " + std::to_string(M) +
                               " below " + std::to_string(needed));
    }
    return hermite_grid_mean(evaluate_grid(coeffs, M), t);
}

double proj4_exact(const LatticeMoments& m, const CoefficientTable& table) {
    double sum = 0.0;
    for (const ExpansionTerm& term : expansion_terms(2, table)) {
        sum += term.weight * hermite_integral(m, term.triple);
    }
    return length_scale(m.n) * sum;
}

double proj4_exact(const WaveCoefficients& coeffs, const CoefficientTable& table) {
    return proj4_exact(LatticeMoments::of(coeffs), table);
}

double proj4_exact(const WaveCoefficients& coeffs) {
    return proj4_exact(coeffs, fourth_order_table());
}

double proj4_asymptotic(std::int64_t n, std::size_t N, const std::array<double, 4>& w) {
    const double energy = 4.0 * std::numbers::pi * std::numbers::pi * static_cast<double>(n);
    const double NN = static_cast<double>(N);
    return std::sqrt(energy / (512.0 * NN * NN)) *
           (1.0 + w[0] * w[0] - 2.0 * w[1] * w[1] - 2.0 * w[2] * w[2] - 4.0 * w[3] * w[3]);
}

double proj4_asymptotic(const WaveCoefficients& coeffs) {
    return proj4_asymptotic(coeffs.circle().n, coeffs.circle().cardinality(), w_vector(coeffs));
}

double proj_quadrature(const WaveCoefficients& coeffs, int q, std::size_t M) {
    if (q < 2 || q > 16) throw InvalidArgument("proj_quadrature: q must lie in [2, 16]");
    const std::int64_t n = coeffs.circle().n;
    const auto needed = static_cast<std::size_t>(4 * q * ceil_sqrt(n) + 1);
    if (M < needed) {
        throw ResolutionTooLow("proj_quadrature: M = " + std::to_string(M) + " below " +
                               std::to_string(needed) + " for q = " + std::to_string(q));
    }
    const CoefficientTable table = CoefficientTable::build(2 * q);
    const std::vector<ExpansionTerm> terms = expansion_terms(q, table);
    const FieldGrid grid = evaluate_grid(coeffs, M);
    const auto order = static_cast<std::size_t>(2 * q + 1);

    const double sum = kernels::ordered_row_sum(M, [&](std::size_t i) {
        std::array<double, 33> h0{}, h1{}, h2{};
        double row = 0.0;
        for (std::size_t idx = i * M; idx < (i + 1) * M; ++idx) {
            hermite_all(grid.values[idx], std::span<double>(h0.data(), order));
            hermite_all(grid.grad1[idx], std::span<double>(h1.data(), order));
            hermite_all(grid.grad2[idx], std::span<double>(h2.data(), order));
            for (const ExpansionTerm& term : terms) {
                row += term.weight * h0[term.triple.a] * h1[term.triple.b] * h2[term.triple.c];
            }
        }
        return row;
    });
    return length_scale(static_cast<double>(n)) * sum / static_cast<double>(M * M);
}

S4Structure s4_structure(const LatticeCircle& circle, std::size_t max_samples) {
    const std::size_t N = circle.cardinality();
    if (N > 256) {
        throw CircleTooLarge("s4_structure: N = " + std::to_string(N) +
                             " exceeds the brute-force limit 256");
    }
    const auto& pts = circle.points;
    auto neg = [](LatticePoint p) { return LatticePoint{-p.x, -p.y}; };

    S4Structure out;
    for (const auto& p0 : pts) {
        for (const auto& p1 : pts) {
            for (const auto& p2 : pts) {
                const LatticePoint p3{-(p0.x + p1.x + p2.x), -(p0.y + p1.y + p2.y)};
                if (!std::binary_search(pts.begin(), pts.end(), p3)) continue;
                ++out.cardinality;
                const bool paired = (p0 == neg(p1) && p2 == neg(p3)) ||
                                    (p0 == neg(p2) && p1 == neg(p3)) ||
                                    (p0 == neg(p3) && p1 == neg(p2));
                if (!paired) {
                    throw std::logic_error("s4_structure: tuple without antipodal pairing at n = " +
                                           std::to_string(circle.n));
                }
                const auto on_axis = [&](LatticePoint p) { return p == p0 || p == neg(p0); };
                if (on_axis(p1) && on_axis(p2) && on_axis(p3)) {
                    ++out.class_b;
                } else {
                    ++out.class_a;
                }
                if (out.samples.size() < max_samples) out.samples.push_back({p0, p1, p2, p3});
            }
        }
    }
    const std::uint64_t n64 = N;
    if (out.class_b != 3 * n64 || out.class_a != 3 * n64 * (n64 - 2)) {
        throw std::logic_error("s4_structure: class sizes do not match 3N and 3N(N-2) at n = " +
                               std::to_string(circle.n));
    }
    return out;
}

ChaosReport chaos_report(const WaveCoefficients& coeffs, bool enumerate_s4) {
    const LatticeMoments m = LatticeMoments::of(coeffs);
    ChaosReport report;
    report.w = w_vector(coeffs);
    report.proj2 = proj2(coeffs);
    report.proj4 = proj4_exact(m, fourth_order_table());
    report.proj4_asymptotic =
        proj4_asymptotic(coeffs.circle().n, coeffs.circle().cardinality(), report.w);
    for (const HermiteTriple& t : kFourthChaosTriples) {
        report.hermite_integrals[t] = hermite_integral(m, t);
    }
    const std::uint64_t N = coeffs.circle().cardinality();
    report.s4_cardinality = enumerate_s4 ? s4_structure(coeffs.circle()).cardinality : 3 * N * (N - 1);
    return report;
}

}  // namespace torus_waves
