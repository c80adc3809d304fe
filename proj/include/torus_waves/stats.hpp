#pragma once

#include <cstddef>
#include <span>

namespace torus_waves::stats {

double mean(std::span<const double> x);

/// Unbiased sample variance (two-pass). Requires at least 2 values.
double variance(std::span<const double> x);

/// Unbiased sample covariance of two equally long series.
double covariance(std::span<const double> x, std::span<const double> y);

/// Standard error of the mean, sqrt(variance / size).
double standard_error(std::span<const double> x);

}  // namespace torus_waves::stats
