#pragma once

#include <cstdint>
#include <random>

namespace d2dnc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic RNG wrapper. Doubles are derived from the top 53 bits of
/// mt19937_64 output so results are identical across platforms and compilers
/// (std::uniform_real_distribution is implementation-defined and avoided).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 eng_;
};

/// Independent per-episode substreams. Keeping topology, side-information and
/// channel draws on separate streams means a scheme that ignores one of them
/// (e.g. a broadcast-only baseline ignoring topology) is bit-identical across
/// sweeps of the parameters feeding that stream.
struct EpisodeStreams {
    Rng topology;
    Rng state;
    Rng channel;

    static EpisodeStreams make(std::uint64_t master_seed, std::uint64_t episode_index) {
        const std::uint64_t base = splitmix64(master_seed ^ splitmix64(episode_index));
        return EpisodeStreams{Rng(splitmix64(base ^ 0x746f706full)),
                              Rng(splitmix64(base ^ 0x73746174ull)),
                              Rng(splitmix64(base ^ 0x6368616eull))};
    }
};

}  // namespace d2dnc
