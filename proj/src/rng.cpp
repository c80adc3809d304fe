#include "torus_waves/rng.hpp"

namespace torus_waves {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t n,
                          std::uint64_t replication) noexcept {
    return mix64(mix64(mix64(master_seed) ^ n) ^ replication);
}

}  // namespace torus_waves
