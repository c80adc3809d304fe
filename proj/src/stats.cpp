#include "torus_waves/stats.hpp"

#include <cmath>

#include "torus_waves/errors.hpp"

namespace torus_waves::stats {

double mean(std::span<const double> x) {
    if (x.empty()) throw TooFewSamples("mean of an empty series");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double covariance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("covariance: series lengths differ");
    if (x.size() < 2) throw TooFewSamples("covariance needs at least 2 values");
    const double mx = mean(x);
    const double my = mean(y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
    return s / static_cast<double>(x.size() - 1);
}

double variance(std::span<const double> x) { return covariance(x, x); }

double standard_error(std::span<const double> x) {
    return std::sqrt(variance(x) / static_cast<double>(x.size()));
}

}  // namespace torus_waves::stats
