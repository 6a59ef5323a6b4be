#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace byzcode {

// 64-bit finalizer (splitmix64). Used both as a PRNG step and as the mixing
// core of the binning hashes, so every stream stays portable across platforms.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic PRNG stream. Sub-streams are derived by label so that
// independent parts of a simulation (sources, function choices, adversary
// moves) never share state; results are identical regardless of thread count.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(mix64(seed ^ 0xd1b54a32d192ed03ULL)) {}

    RngStream derive(std::uint64_t label) const {
        return RngStream(mix64(state_ ^ mix64(label ^ 0x8cb92ba72f3d8dd7ULL)));
    }
    RngStream derive(std::uint64_t a, std::uint64_t b) const { return derive(a).derive(b); }
    RngStream derive(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
        return derive(a).derive(b).derive(c);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform in [0,1) with 53 significant bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1}; unbiased via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Index draw from an unnormalized weight vector.
    std::size_t next_weighted(std::span<const double> weights);

    // Poisson draw; only used for tiny means so plain inversion suffices.
    int next_poisson(double mean);

  private:
    std::uint64_t state_;
};

}  // namespace byzcode
