#include "byzcode/binning.hpp"

#include <stdexcept>

namespace byzcode {

std::vector<std::uint8_t> BinningEncoder::bits(std::span<const std::uint8_t> seq, int from,
                                               int to) const {
    if (from < 0 || to < from) throw std::invalid_argument("BinningEncoder::bits: bad range");
    std::vector<std::uint8_t> out((to - from + 7) / 8, 0);
    for (int b = from; b < to; ++b) {
        std::uint64_t w = word(seq, b >> 6);
        int bit = static_cast<int>((w >> (b & 63)) & 1u);
        int pos = b - from;
        out[pos >> 3] = static_cast<std::uint8_t>(out[pos >> 3] | (bit << (pos & 7)));
    }
    return out;
}

bool BinningEncoder::matches(std::span<const std::uint8_t> seq, int from, int to,
                             std::span<const std::uint8_t> expected) const {
    for (int b = from; b < to; ++b) {
        std::uint64_t w = word(seq, b >> 6);
        int bit = static_cast<int>((w >> (b & 63)) & 1u);
        int pos = b - from;
        if (bit != ((expected[pos >> 3] >> (pos & 7)) & 1)) return false;
    }
    return true;
}

}  // namespace byzcode
