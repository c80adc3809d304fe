#include "torus_waves/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

#include "torus_waves/chaos.hpp"
#include "torus_waves/errors.hpp"
#include "torus_waves/field.hpp"
#include "torus_waves/lattice.hpp"
#include "torus_waves/nodal.hpp"
#include "torus_waves/stats.hpp"

namespace torus_waves {

using nlohmann::json;

namespace {

// Stream index reserved for the reference sample of M_eta; replication
// indices never reach it.
constexpr std::uint64_t kReferenceStream = std::numeric_limits<std::uint64_t>::max();

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        if (!known.contains(key)) {
            throw InvalidArgument("experiment config: unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
void read(const json& object, const char* key, T& target) {
    if (object.contains(key)) target = object.at(key).get<T>();
}

std::string csv_number(double v) {
    if (!std::isfinite(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> standardized(std::span<const double> x) {
    const double m = stats::mean(x);
    const double sd = std::sqrt(stats::variance(x));
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - m) / sd;
    return out;
}

struct Replication {
    double length = 0.0;
    double proj2 = 0.0;
    double proj4 = 0.0;
    std::vector<double> band;  // one entry per sweep eps, first K replications only
};

Check make_check(std::string name, double value, double threshold, bool asserted, bool at_most,
                 bool calibrated = false) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.asserted = asserted;
    c.calibrated = calibrated;
    c.passed = at_most ? value <= threshold : value >= threshold;
    return c;
}

NRecord run_one(const ExperimentConfig& config, std::int64_t n) {
    const auto started = std::chrono::steady_clock::now();
    const auto circle = std::make_shared<const LatticeCircle>(enumerate_circle(n));
    const std::size_t N = circle->cardinality();
    const double energy = circle->energy();
    const double mu4 = fourier_coefficient4(*circle);
    const double eta = std::min(std::abs(mu4), 1.0);
    const double c_n = c_constant(eta);
    const double scale = c_n * energy / (static_cast<double>(N) * static_cast<double>(N));
    const bool asymptotic = N >= config.min_asymptotic_cardinality;
    const std::size_t R = config.replications;
    const std::size_t M = default_resolution(n, config.grid_factor);
    const Thresholds& th = config.thresholds;

    std::vector<Replication> reps(R);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(R); ++k) {
        const auto r = static_cast<std::uint64_t>(k);
        const WaveCoefficients coeffs = sample_coefficients(circle, config.master_seed, r);
        Replication& out = reps[r];
        out.proj2 = proj2(coeffs);
        out.proj4 = proj4_exact(coeffs);
        if (config.lengths) {
            const FieldGrid grid = evaluate_grid(coeffs, M, GridChannels::values_only);
            out.length = nodal_length_ms(grid).value;
            if (r < config.sweep_replications) {
                for (double eps : config.eps_sweep) out.band.push_back(band_length(grid, eps, n).value);
            }
        }
    }

    NRecord rec;
    rec.n = n;
    rec.cardinality = N;
    rec.mu4 = mu4;
    rec.replications = R;

    std::vector<double> proj4_values(R);
    for (std::size_t r = 0; r < R; ++r) {
        proj4_values[r] = reps[r].proj4;
        rec.max_abs_proj2 = std::max(rec.max_abs_proj2, std::abs(reps[r].proj2));
    }
    rec.proj4_variance = stats::variance(proj4_values);
    rec.proj4_variance_ratio = rec.proj4_variance / scale;

    RandomStream reference_rng(config.master_seed, static_cast<std::uint64_t>(n), kReferenceStream);
    const EmpiricalCdf reference = m_eta_empirical_cdf(eta, config.reference_samples, reference_rng);
    rec.ks_proj4 = ks_distance(standardized(proj4_values), reference);

    rec.checks.push_back(make_check("proj2_zero", rec.max_abs_proj2, th.proj2_abs, true, true));
    rec.checks.push_back(make_check("proj4_variance", std::abs(rec.proj4_variance_ratio - 1.0),
                                    th.proj4_variance, asymptotic, true));
    rec.checks.push_back(make_check("ks_proj4", rec.ks_proj4, th.ks_length, false, true, true));

    if (config.lengths) {
        LengthStats ls;
        std::vector<double> lengths(R);
        for (std::size_t r = 0; r < R; ++r) lengths[r] = reps[r].length;
        ls.resolution = M;
        ls.mean = stats::mean(lengths);
        ls.variance = stats::variance(lengths);
        ls.standard_error = stats::standard_error(lengths);
        ls.predicted_mean = expected_nodal_length(n);
        ls.predicted_variance = scale;
        ls.normalized = standardized(lengths);
        ls.ks = ks_distance(ls.normalized, reference);
        const DominationStats dom = variance_domination(lengths, proj4_values);
        ls.domination = dom.ratio;
        ls.residual_ratio = dom.residual_ratio;

        const std::size_t K = std::min(config.sweep_replications, R);
        for (std::size_t e = 0; e < config.eps_sweep.size() && K > 0; ++e) {
            SweepPoint sp;
            sp.eps = config.eps_sweep[e];
            for (std::size_t r = 0; r < K; ++r) {
                sp.mean_band += reps[r].band[e];
                sp.mean_ms += reps[r].length;
                sp.max_relative_difference =
                    std::max(sp.max_relative_difference,
                             std::abs(reps[r].band[e] - reps[r].length) / reps[r].length);
            }
            sp.mean_band /= static_cast<double>(K);
            sp.mean_ms /= static_cast<double>(K);
            ls.sweep.push_back(sp);
        }

        const double mean_gap = std::abs(ls.mean - ls.predicted_mean);
        const double mean_limit = th.mean_se * ls.standard_error + th.mean_allowance * ls.predicted_mean;
        rec.checks.push_back(make_check("mean_length", mean_gap, mean_limit, true, true));
        rec.checks.push_back(make_check("length_variance",
                                        std::abs(ls.variance / scale - 1.0), th.length_variance,
                                        asymptotic, true));
        rec.checks.push_back(make_check("ks_length", ls.ks, th.ks_length, asymptotic, true, true));
        rec.checks.push_back(make_check("domination", ls.domination, th.domination, asymptotic, false));
        for (const SweepPoint& sp : ls.sweep) {
            if (std::abs(sp.eps - config.eps) < 1e-15) {
                rec.checks.push_back(make_check("band_vs_ms", sp.max_relative_difference,
                                                th.band_vs_ms, true, true));
            }
        }
        rec.lengths = std::move(ls);
    }

    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

json check_json(const Check& c) {
    return {{"name", c.name},           {"value", c.value},
            {"threshold", c.threshold}, {"asserted", c.asserted},
            {"calibrated", c.calibrated}, {"passed", c.passed}};
}

}  // namespace

bool NRecord::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return !c.asserted || c.passed; });
}

bool ExperimentReport::all_passed() const {
    return std::all_of(records.begin(), records.end(), [](const NRecord& r) { return r.passed(); });
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("experiment config: ") + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("experiment config: top level must be an object");
    reject_unknown_keys(j,
                        {"n_list", "replications", "grid_factor", "eps", "eps_sweep",
                         "sweep_replications", "master_seed", "reference_samples",
                         "min_asymptotic_cardinality", "lengths", "thresholds", "outputs"},
                        "config");
    ExperimentConfig c;
    try {
        read(j, "n_list", c.n_list);
        read(j, "replications", c.replications);
        read(j, "grid_factor", c.grid_factor);
        read(j, "eps", c.eps);
        read(j, "eps_sweep", c.eps_sweep);
        read(j, "sweep_replications", c.sweep_replications);
        read(j, "master_seed", c.master_seed);
        read(j, "reference_samples", c.reference_samples);
        read(j, "min_asymptotic_cardinality", c.min_asymptotic_cardinality);
        read(j, "lengths", c.lengths);
        if (j.contains("thresholds")) {
            const json& t = j.at("thresholds");
            reject_unknown_keys(t,
                                {"mean_se", "mean_allowance", "length_variance", "proj4_variance",
                                 "ks_length", "domination", "band_vs_ms", "proj2_abs"},
                                "thresholds");
            read(t, "mean_se", c.thresholds.mean_se);
            read(t, "mean_allowance", c.thresholds.mean_allowance);
            read(t, "length_variance", c.thresholds.length_variance);
            read(t, "proj4_variance", c.thresholds.proj4_variance);
            read(t, "ks_length", c.thresholds.ks_length);
            read(t, "domination", c.thresholds.domination);
            read(t, "band_vs_ms", c.thresholds.band_vs_ms);
            read(t, "proj2_abs", c.thresholds.proj2_abs);
        }
        if (j.contains("outputs")) {
            const json& o = j.at("outputs");
            reject_unknown_keys(o, {"report", "summary", "timings"}, "outputs");
            if (o.contains("report")) c.report_path = o.at("report").get<std::string>();
            if (o.contains("summary")) c.summary_path = o.at("summary").get<std::string>();
            if (o.contains("timings")) c.timings_path = o.at("timings").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("experiment config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return from_json(text.str());
}

void ExperimentConfig::validate() const {
    if (n_list.empty()) throw InvalidArgument("experiment config: n_list is empty");
    if (replications < 2) throw InvalidArgument("experiment config: replications must be >= 2");
    if (grid_factor < 8) throw InvalidArgument("experiment config: grid_factor must be >= 8");
    if (!(eps > 0.0)) throw InvalidArgument("experiment config: eps must be positive");
    for (double e : eps_sweep) {
        if (!(e > 0.0)) throw InvalidArgument("experiment config: sweep eps must be positive");
    }
    for (std::int64_t n : n_list) {
        if (!is_sum_of_two_squares(n)) {
            throw NotSumOfTwoSquares("experiment config: " + std::to_string(n) +
                                     " is not a sum of two squares");
        }
    }
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::ofstream report(config.report_path, std::ios::trunc);
    std::ofstream summary(config.summary_path, std::ios::trunc);
    if (!report || !summary) throw InvalidArgument("cannot open experiment output files");
    summary << summary_csv_header() << '\n' << std::flush;

    ExperimentReport out;
    json timings = json::array();
    for (std::int64_t n : config.n_list) {
        NRecord rec = run_one(config, n);
        report << to_json_line(rec) << '\n' << std::flush;
        summary << to_csv_row(rec) << '\n' << std::flush;
        timings.push_back({{"n", n}, {"seconds", rec.seconds}, {"threads", omp_get_max_threads()}});
        out.records.push_back(std::move(rec));
    }
    std::ofstream(config.timings_path, std::ios::trunc) << timings.dump(2) << '\n';
    return out;
}

double ks_distance(std::span<const double> samples, const EmpiricalCdf& reference) {
    if (samples.size() < 2) throw TooFewSamples("ks_distance: need at least 2 samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto m = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        // Step of the sample CDF at sorted[i]: from i/m just below to (i+1)/m.
        const double f = reference(sorted[i]);
        d = std::max({d, std::abs(static_cast<double>(i + 1) / m - f),
                      std::abs(static_cast<double>(i) / m - f)});
    }
    return std::min(d, 1.0);
}

DominationStats variance_domination(std::span<const double> lengths,
                                    std::span<const double> proj4) {
    if (lengths.size() != proj4.size()) {
        throw InvalidArgument("variance_domination: series lengths differ");
    }
    std::vector<double> residual(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) residual[i] = lengths[i] - proj4[i];
    const double var_l = stats::variance(lengths);
    return {stats::variance(proj4) / var_l, stats::variance(residual) / var_l};
}

std::string to_json_line(const NRecord& r) {
    json j;
    j["n"] = r.n;
    j["cardinality"] = r.cardinality;
    j["mu4"] = r.mu4;
    j["replications"] = r.replications;
    j["proj4_variance"] = r.proj4_variance;
    j["proj4_variance_ratio"] = r.proj4_variance_ratio;
    j["ks_proj4"] = r.ks_proj4;
    j["max_abs_proj2"] = r.max_abs_proj2;
    if (r.lengths) {
        const LengthStats& l = *r.lengths;
        json sweep = json::array();
        for (const SweepPoint& s : l.sweep) {
            sweep.push_back({{"eps", s.eps},
                             {"mean_band", s.mean_band},
                             {"mean_ms", s.mean_ms},
                             {"max_relative_difference", s.max_relative_difference}});
        }
        j["lengths"] = {{"resolution", l.resolution},
                        {"mean", l.mean},
                        {"variance", l.variance},
                        {"standard_error", l.standard_error},
                        {"predicted_mean", l.predicted_mean},
                        {"predicted_variance", l.predicted_variance},
                        {"ks", l.ks},
                        {"domination", l.domination},
                        {"residual_ratio", l.residual_ratio},
                        {"eps_sweep", sweep},
                        {"normalized", l.normalized}};
    }
    json checks = json::array();
    for (const Check& c : r.checks) checks.push_back(check_json(c));
    j["checks"] = checks;
    j["passed"] = r.passed();
    return j.dump();
}

std::string summary_csv_header() {
    return "n,cardinality,mu4,replications,resolution,mean_length,predicted_mean,standard_error,"
           "variance_length,predicted_variance,ks_length,domination,residual_ratio,"
           "proj4_variance_ratio,ks_proj4,max_abs_proj2,passed";
}

std::string to_csv_row(const NRecord& r) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const LengthStats* l = r.lengths ? &*r.lengths : nullptr;
    std::ostringstream row;
    row << r.n << ',' << r.cardinality << ',' << csv_number(r.mu4) << ',' << r.replications << ','
        << (l ? std::to_string(l->resolution) : "") << ',' << csv_number(l ? l->mean : nan) << ','
        << csv_number(l ? l->predicted_mean : nan) << ',' << csv_number(l ? l->standard_error : nan)
        << ',' << csv_number(l ? l->variance : nan) << ','
        << csv_number(l ? l->predicted_variance : nan) << ',' << csv_number(l ? l->ks : nan) << ','
        << csv_number(l ? l->domination : nan) << ',' << csv_number(l ? l->residual_ratio : nan)
        << ',' << csv_number(r.proj4_variance_ratio) << ',' << csv_number(r.ks_proj4) << ','
        << csv_number(r.max_abs_proj2) << ',' << (r.passed() ? "true" : "false");
    return row.str();
}

}  // namespace torus_waves
