#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "torus_waves/limits.hpp"

namespace torus_waves {

struct Thresholds {
    double mean_se = 3.0;           ///< standard errors allowed on the mean length
    double mean_allowance = 0.01;   ///< relative discretization allowance on the mean
    double length_variance = 0.25;  ///< relative tolerance on Var(L) N^2 / (c E)
    double proj4_variance = 0.15;   ///< relative tolerance on Var(proj4) N^2 / (c E)
    double ks_length = 0.08;        ///< engineering calibration, see README
    double domination = 0.75;
    double band_vs_ms = 0.05;
    double proj2_abs = 1e-12;
};

struct ExperimentConfig {
    std::vector<std::int64_t> n_list;
    std::size_t replications = 2000;
    std::size_t grid_factor = 16;
    double eps = 0.05;
    std::vector<double> eps_sweep{0.2, 0.1, 0.05, 0.025};
    std::size_t sweep_replications = 8;  ///< band sweep runs on the first K replications
    std::uint64_t master_seed = 1;
    std::size_t reference_samples = 1000000;  ///< draws of M_eta behind each KS test
    std::size_t min_asymptotic_cardinality = 64;  ///< asymptotic checks asserted from this N on
    bool lengths = true;                          ///< false: chaos-only, no grids
    Thresholds thresholds;
    std::filesystem::path report_path = "report.jsonl";
    std::filesystem::path summary_path = "summary.csv";
    std::filesystem::path timings_path = "timings.json";

    /// Parses a JSON object; unknown keys are rejected (InvalidArgument).
    static ExperimentConfig from_json(std::string_view text);
    static ExperimentConfig from_file(const std::filesystem::path& path);

    /// replications >= 2, grid_factor >= 8, every n a sum of two squares.
    void validate() const;
};

struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool asserted = false;    ///< false: reported only
    bool calibrated = false;  ///< threshold is an engineering calibration
    bool passed = true;
};

struct SweepPoint {
    double eps = 0.0;
    double mean_band = 0.0;
    double mean_ms = 0.0;
    double max_relative_difference = 0.0;
};

struct LengthStats {
    std::size_t resolution = 0;
    double mean = 0.0;
    double variance = 0.0;
    double standard_error = 0.0;
    double predicted_mean = 0.0;
    double predicted_variance = 0.0;  ///< c_n E / N^2
    double ks = 0.0;                  ///< standardized lengths vs M_|mu4|
    double domination = 0.0;          ///< Var(proj4) / Var(L)
    double residual_ratio = 0.0;      ///< Var(L - proj4) / Var(L)
    std::vector<SweepPoint> sweep;
    std::vector<double> normalized;   ///< (L - mean) / sd
};

struct NRecord {
    std::int64_t n = 0;
    std::size_t cardinality = 0;
    double mu4 = 0.0;
    std::size_t replications = 0;
    double proj4_variance = 0.0;
    double proj4_variance_ratio = 0.0;  ///< Var(proj4) N^2 / (c_n E)
    double ks_proj4 = 0.0;
    double max_abs_proj2 = 0.0;
    std::optional<LengthStats> lengths;
    std::vector<Check> checks;
    double seconds = 0.0;  ///< written to the timings file only

    bool passed() const;
};

struct ExperimentReport {
    std::vector<NRecord> records;
    bool all_passed() const;
};

/// Runs every n of the configuration. Each completed n is appended to the
/// report and summary files immediately; timings go to their own file so the
/// report itself is byte-identical across runs with the same master seed.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and
/// `reference`. Throws TooFewSamples for fewer than 2 samples.
double ks_distance(std::span<const double> samples, const EmpiricalCdf& reference);

struct DominationStats {
    double ratio = 0.0;           ///< Var(proj4) / Var(L)
    double residual_ratio = 0.0;  ///< Var(L - proj4) / Var(L)
};

DominationStats variance_domination(std::span<const double> lengths,
                                    std::span<const double> proj4);

std::string to_json_line(const NRecord& record);
std::string summary_csv_header();
std::string to_csv_row(const NRecord& record);

}  // namespace torus_waves
