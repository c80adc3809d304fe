// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <vector>

#include "torus_waves/field.hpp"
#include "torus_waves/kernels.hpp"
#include "torus_waves/nodal.hpp"

namespace tw = torus_waves;
namespace k = torus_waves::kernels;

namespace {

struct Fixture {
    std::int64_t n;
    std::size_t M;
    k::SpectralTerms terms;
    std::vector<double> values;
};

Fixture make_fixture(std::int64_t n) {
    const auto circle = std::make_shared<const tw::LatticeCircle>(tw::enumerate_circle(n));
    const auto coeffs = tw::sample_coefficients(circle, 1, 0);
    Fixture f{n, tw::default_resolution(n), {}, {}};
    const double scale = 2.0 / std::sqrt(static_cast<double>(circle->cardinality()));
    for (std::size_t h = 0; h < circle->half_points.size(); ++h) {
        f.terms.k1.push_back(circle->half_points[h].x);
        f.terms.k2.push_back(circle->half_points[h].y);
        f.terms.re.push_back(scale * coeffs.half_values()[h].real());
        f.terms.im.push_back(scale * coeffs.half_values()[h].imag());
    }
    f.terms.gradient_scale = 1.0;
    f.values = tw::evaluate_grid(coeffs, f.M, tw::GridChannels::values_only).values;
    return f;
}

template <void (*Synth)(const k::SpectralTerms&, std::size_t, k::GridBuffers)>
void BM_Synthesis(benchmark::State& state) {
    const Fixture f = make_fixture(state.range(0));
    std::vector<double> v(f.M * f.M), g1(f.M * f.M), g2(f.M * f.M);
    for (auto _ : state) {
        Synth(f.terms, f.M, {v, g1, g2});
        benchmark::DoNotOptimize(v.data());
    }
    state.counters["M"] = static_cast<double>(f.M);
}

template <double (*Len)(std::span<const double>, std::size_t, double)>
void BM_Isoline(benchmark::State& state) {
    const Fixture f = make_fixture(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Len(f.values, f.M, 0.0));
}

template <double (*Band)(std::span<const double>, std::size_t, double)>
void BM_Band(benchmark::State& state) {
    const Fixture f = make_fixture(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(Band(f.values, f.M, 0.05));
}

}  // namespace

BENCHMARK(BM_Synthesis<k::synthesize_serial>)->Name("synthesis/serial")->Arg(325)->Arg(1105)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Synthesis<k::synthesize_parallel>)->Name("synthesis/parallel")->Arg(325)->Arg(1105)->Arg(32045)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Isoline<k::isoline_length_serial>)->Name("isoline/serial")->Arg(325)->Arg(32045)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Isoline<k::isoline_length_parallel>)->Name("isoline/parallel")->Arg(325)->Arg(32045)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Band<k::band_integral_serial>)->Name("band/serial")->Arg(325)->Arg(32045)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Band<k::band_integral_parallel>)->Name("band/parallel")->Arg(325)->Arg(32045)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
