#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "byzcode/rng.hpp"

namespace byzcode {

// Random binning function for one sensor, round and encoding-function index.
// The codebook key is public: sensor, decoder and adversaries can all
// evaluate it. Bits come out of a keyed counter-mode mix of the sequence, so
// a prefix of any width is defined and distinct sequences collide on b bits
// with probability about 2^-b.
class BinningEncoder {
  public:
    BinningEncoder(std::uint64_t codebook_seed, int sensor, int round, int function_index)
        : key_(mix64(codebook_seed ^ mix64(0x62696e5f00000000ULL ^
                                           (static_cast<std::uint64_t>(sensor) << 40) ^
                                           (static_cast<std::uint64_t>(round) << 20) ^
                                           static_cast<std::uint64_t>(function_index)))) {}

    // Incremental form: absorb symbols one at a time, then squeeze words.
    // Scanners keep a stack of absorb states so that enumerating sequences
    // in odometer order costs O(1) hash work per sequence.
    std::uint64_t absorb_state() const { return key_; }
    static std::uint64_t absorb(std::uint64_t state, std::uint8_t symbol) {
        return mix64(state ^ (0x100ULL + symbol));
    }
    static std::uint64_t word_from_state(std::uint64_t state, int w) {
        return mix64(state ^ (0x77ULL + static_cast<std::uint64_t>(w) * 0x9e3779b97f4a7c15ULL));
    }

    // 64-bit word `w` of the bin index of `seq`.
    std::uint64_t word(std::span<const std::uint8_t> seq, int w) const {
        std::uint64_t h = key_;
        for (std::uint8_t s : seq) h = absorb(h, s);
        return word_from_state(h, w);
    }

    // Bits [from, to) of the bin index, packed LSB-first into bytes.
    std::vector<std::uint8_t> bits(std::span<const std::uint8_t> seq, int from, int to) const;

    // True iff bits [from, to) of seq's bin index equal `expected` (packed as
    // produced by bits()).
    bool matches(std::span<const std::uint8_t> seq, int from, int to,
                 std::span<const std::uint8_t> expected) const;

  private:
    std::uint64_t key_;
};

}  // namespace byzcode
