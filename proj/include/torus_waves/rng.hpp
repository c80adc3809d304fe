#pragma once

#include <cstdint>
#include <random>

namespace torus_waves {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the stream keyed by (master seed, eigenvalue index, replication).
/// Streams with different keys are statistically independent, so a parallel
/// loop over replications draws the same numbers under any schedule.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t n,
                          std::uint64_t replication) noexcept;

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    RandomStream(std::uint64_t master_seed, std::uint64_t n, std::uint64_t replication)
        : engine_(stream_seed(master_seed, n, replication)) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace torus_waves
