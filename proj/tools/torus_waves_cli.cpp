// Command-line front end: one subcommand per library module.
//
// Exit codes: 0 success, 1 domain error or failed assertion, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "torus_waves/chaos.hpp"
#include "torus_waves/errors.hpp"
#include "torus_waves/field.hpp"
#include "torus_waves/harness.hpp"
#include "torus_waves/hermite.hpp"
#include "torus_waves/kernels.hpp"
#include "torus_waves/lattice.hpp"
#include "torus_waves/limits.hpp"
#include "torus_waves/nodal.hpp"
#include "torus_waves/stats.hpp"

namespace tw = torus_waves;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Binary grid layout, little-endian:
//   8 bytes  magic "TWGRID01"
//   uint64   M
//   uint64   channel count (1 = values, 3 = values, grad1, grad2)
//   double   M*M values per channel, row-major, node (i, j) at x = (i/M, j/M)
constexpr char kGridMagic[8] = {'T', 'W', 'G', 'R', 'I', 'D', '0', '1'};

std::shared_ptr<const tw::LatticeCircle> circle_for(std::int64_t n) {
    return std::make_shared<const tw::LatticeCircle>(tw::enumerate_circle(n));
}

json point_list(const std::vector<tw::LatticePoint>& points) {
    json out = json::array();
    for (const auto& p : points) out.push_back({p.x, p.y});
    return out;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

void write_grid(const tw::FieldGrid& grid, const std::string& path, const std::string& format) {
    if (format == "binary") {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw tw::InvalidArgument("cannot open " + path);
        const std::uint64_t M = grid.resolution;
        const std::uint64_t channels = grid.has_gradient() ? 3 : 1;
        out.write(kGridMagic, sizeof kGridMagic);
        out.write(reinterpret_cast<const char*>(&M), sizeof M);
        out.write(reinterpret_cast<const char*>(&channels), sizeof channels);
        const auto bytes = static_cast<std::streamsize>(grid.values.size() * sizeof(double));
        out.write(reinterpret_cast<const char*>(grid.values.data()), bytes);
        if (grid.has_gradient()) {
            out.write(reinterpret_cast<const char*>(grid.grad1.data()), bytes);
            out.write(reinterpret_cast<const char*>(grid.grad2.data()), bytes);
        }
        return;
    }
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw tw::InvalidArgument("cannot open " + path);
    const std::size_t M = grid.resolution;
    std::fprintf(f, "i,j,x1,x2,value,grad1,grad2\n");
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            const std::size_t k = i * M + j;
            std::fprintf(f, "%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j,
                         static_cast<double>(i) / M, static_cast<double>(j) / M, grid.values[k],
                         grid.grad1[k], grid.grad2[k]);
        }
    }
    std::fclose(f);
}

std::string triple_key(const tw::HermiteTriple& t) {
    return std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c);
}

}  // namespace

int main(int argc, char** argv) {
    tw::kernels::configure_threads_from_env();

    CLI::App app{"Arithmetic random waves on the 2-torus"};
    app.require_subcommand(1);
    app.fallthrough();
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Print every check of an experiment");

    std::int64_t n = 0;
    std::uint64_t seed = 1;
    std::uint64_t replication = 0;

    auto* lattice = app.add_subcommand("lattice", "Lattice points and mu_hat(k) of one circle");
    lattice->add_option("--n", n, "Eigenvalue index")->required();
    std::optional<int> fourier_k;
    lattice->add_option("--fourier", fourier_k, "Also print mu_hat(k)");

    auto* search = app.add_subcommand("search-eta", "Indices n with |mu_hat_n(4)| near a target");
    double target = 0.0, tolerance = 1e-3;
    std::int64_t n_min = 1, n_max = 10000;
    search->add_option("--target", target, "Target |mu_hat(4)| in [0, 1]")->required();
    search->add_option("--n-min", n_min, "Lower end of the scan")->capture_default_str();
    search->add_option("--n-max", n_max, "Upper end of the scan")->capture_default_str();
    search->add_option("--tol", tolerance, "Tolerance")->capture_default_str();

    auto* coeffs = app.add_subcommand("coeffs", "Hermite coefficient table");
    int max_order = 4;
    coeffs->add_option("--max-order", max_order, "Largest even order")->capture_default_str();

    auto* sample = app.add_subcommand("sample", "Sample one field and write its grid");
    std::size_t grid_m = 0;
    std::string out_path, format = "csv";
    sample->add_option("--n", n, "Eigenvalue index")->required();
    sample->add_option("--seed", seed, "Master seed")->capture_default_str();
    sample->add_option("--replication", replication, "Replication index")->capture_default_str();
    sample->add_option("--grid", grid_m, "Points per axis")->required();
    sample->add_option("--out", out_path, "Output file")->required();
    sample->add_option("--format", format, "csv or binary")
        ->check(CLI::IsMember({"csv", "binary"}))
        ->capture_default_str();

    auto* nodal = app.add_subcommand("nodal", "Nodal or level-curve length of one sample");
    std::string method = "ms";
    double u = 0.0, eps = 0.05;
    nodal->add_option("--n", n, "Eigenvalue index")->required();
    nodal->add_option("--seed", seed, "Master seed")->capture_default_str();
    nodal->add_option("--replication", replication, "Replication index")->capture_default_str();
    nodal->add_option("--method", method, "ms or band")
        ->check(CLI::IsMember({"ms", "band"}))
        ->capture_default_str();
    nodal->add_option("--u", u, "Level (marching squares only)")->capture_default_str();
    nodal->add_option("--eps", eps, "Band half-width")->capture_default_str();
    nodal->add_option("--grid", grid_m, "Points per axis (default 16 ceil(sqrt(n)))");

    auto* chaos = app.add_subcommand("chaos", "Chaotic projections of one sample");
    std::optional<int> q_order;
    bool enumerate_s4 = false;
    chaos->add_option("--n", n, "Eigenvalue index")->required();
    chaos->add_option("--seed", seed, "Master seed")->capture_default_str();
    chaos->add_option("--replication", replication, "Replication index")->capture_default_str();
    chaos->add_option("--q", q_order, "Also evaluate L[2q] by quadrature (q >= 2)");
    chaos->add_flag("--s4", enumerate_s4, "Count S_n(4) by brute force");

    auto* limits = app.add_subcommand("limits", "Moments and quantiles of M_eta");
    double eta = 0.0;
    std::size_t samples = 1000000;
    limits->add_option("--eta", eta, "Spectral parameter in [0, 1]")->required();
    limits->add_option("--samples", samples, "Number of draws")->capture_default_str();
    limits->add_option("--seed", seed, "Seed")->capture_default_str();

    auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiment from a config");
    std::string config_path;
    experiment->add_option("--config", config_path, "JSON configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*lattice) {
            const tw::LatticeCircle circle = tw::enumerate_circle(n);
            json j{{"n", circle.n},
                   {"cardinality", circle.cardinality()},
                   {"points", point_list(circle.points)},
                   {"half_points", point_list(circle.half_points)},
                   {"mu4", tw::fourier_coefficient4(circle)}};
            if (fourier_k) {
                const auto z = tw::fourier_coefficient(circle, *fourier_k);
                j["fourier"] = {{"k", *fourier_k}, {"re", z.real()}, {"im", z.imag()}};
            }
            print(j);
        } else if (*search) {
            json matches = json::array();
            for (const auto& m : tw::search_eta(target, n_min, n_max, tolerance)) {
                matches.push_back({{"n", m.n}, {"cardinality", m.cardinality}, {"mu4", m.mu4}});
            }
            print({{"target", target}, {"tolerance", tolerance}, {"matches", matches}});
        } else if (*coeffs) {
            const tw::CoefficientTable table = tw::CoefficientTable::build(max_order);
            json beta = json::object();
            for (const auto& [l, v] : table.beta) beta[std::to_string(l)] = v;
            json alpha = json::array();
            for (const auto& [ab, v] : table.alpha) {
                alpha.push_back({{"a", ab.first}, {"b", ab.second}, {"value", v}});
            }
            print({{"max_order", table.max_order}, {"beta", beta}, {"alpha", alpha}});
        } else if (*sample) {
            const auto c = tw::sample_coefficients(circle_for(n), seed, replication);
            const tw::FieldGrid grid = tw::evaluate_grid(c, grid_m);
            write_grid(grid, out_path, format);
            print({{"n", n},
                   {"seed", seed},
                   {"replication", replication},
                   {"resolution", grid_m},
                   {"format", format},
                   {"out", out_path},
                   {"grid_mean", tw::stats::mean(grid.values)}});
        } else if (*nodal) {
            const auto c = tw::sample_coefficients(circle_for(n), seed, replication);
            const std::size_t M = grid_m ? grid_m : tw::default_resolution(n);
            const tw::LengthEstimate est =
                method == "ms"
                    ? tw::nodal_length_ms(tw::evaluate_grid(c, M, tw::GridChannels::values_only), u)
                    : tw::band_length(c, eps, M);
            json j{{"n", n},
                   {"seed", seed},
                   {"replication", replication},
                   {"method", tw::to_string(est.method)},
                   {"resolution", est.resolution},
                   {"value", est.value},
                   {"expected_nodal_length", tw::expected_nodal_length(n)}};
            if (est.eps) j["eps"] = *est.eps;
            if (method == "ms") j["u"] = u;
            print(j);
        } else if (*chaos) {
            const auto c = tw::sample_coefficients(circle_for(n), seed, replication);
            const tw::ChaosReport report = tw::chaos_report(c, enumerate_s4);
            json integrals = json::object();
            for (const auto& [t, v] : report.hermite_integrals) integrals[triple_key(t)] = v;
            json j{{"n", n},
                   {"seed", seed},
                   {"replication", replication},
                   {"w", report.w},
                   {"proj2", report.proj2},
                   {"proj4", report.proj4},
                   {"proj4_asymptotic", report.proj4_asymptotic},
                   {"hermite_integrals", integrals},
                   {"s4_cardinality", report.s4_cardinality}};
            if (q_order) {
                const auto M = static_cast<std::size_t>(4 * *q_order * tw::ceil_sqrt(n) + 1);
                j["quadrature"] = {{"q", *q_order},
                                   {"resolution", M},
                                   {"value", tw::proj_quadrature(c, *q_order, M)}};
            }
            print(j);
        } else if (*limits) {
            tw::RandomStream rng(seed);
            const tw::EmpiricalCdf cdf = tw::m_eta_empirical_cdf(eta, samples, rng);
            const auto& sorted = cdf.sorted();
            json quantiles = json::object();
            for (double p : {0.001, 0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99, 0.999}) {
                quantiles[std::to_string(p)] = cdf.quantile(p);
            }
            const tw::SigmaMatrix sigma = tw::sigma_matrix(eta);
            print({{"eta", eta},
                   {"samples", samples},
                   {"support_upper", cdf.support_upper()},
                   {"mean", tw::stats::mean(sorted)},
                   {"variance", tw::stats::variance(sorted)},
                   {"max", sorted.back()},
                   {"quantiles", quantiles},
                   {"c_constant", tw::c_constant(eta)},
                   {"sigma_eigenvalues",
                    {sigma.eigenvalues[0], sigma.eigenvalues[1], sigma.eigenvalues[2],
                     sigma.eigenvalues[3]}},
                   {"limit_variance", tw::limit_variance_check(eta)}});
        } else if (*experiment) {
            const tw::ExperimentConfig config = tw::ExperimentConfig::from_file(config_path);
            const tw::ExperimentReport report = tw::run_experiment(config);
            for (const tw::NRecord& r : report.records) {
                std::cout << "n=" << r.n << " N=" << r.cardinality << " mu4=" << r.mu4
                          << (r.passed() ? " PASS" : " FAIL") << '\n';
                if (verbose || !r.passed()) {
                    for (const tw::Check& c : r.checks) {
                        std::cout << "  " << c.name << " value=" << c.value
                                  << " threshold=" << c.threshold
                                  << (c.asserted ? "" : " (reported)")
                                  << (c.passed ? " ok" : " exceeded") << '\n';
                    }
                }
            }
            return report.all_passed() ? 0 : kExitFailure;
        }
    } catch (const tw::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitFailure;
    }
    return 0;
}
