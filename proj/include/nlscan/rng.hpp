#pragma once

#include <cstdint>

namespace nlscan {

// SplitMix64 stream generator. Each output is a hash of a counter advanced by
// a fixed odd gamma, so substreams derived with `substream` never overlap and
// results are identical regardless of thread scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1), never exactly 0 or 1.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via the inverse-CDF method (deterministic, no state
    // beyond the counter).
    double next_gaussian();

    // Independent stream i derived from this stream's seed.
    static Rng substream(std::uint64_t master_seed, std::uint64_t index) {
        Rng mix(master_seed ^ (0x6a09e667f3bcc909ULL * (index + 1)));
        return Rng(mix.next_u64());
    }

private:
    std::uint64_t state_;
};

}  // namespace nlscan
