#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace byzcode {

// Subset of the sensor index set {0, ..., m-1}, stored as a bitmask.
// Sensors are 0-based internally; the CLI and file formats use 1-based ids.
class SensorSet {
  public:
    constexpr SensorSet() = default;
    static constexpr SensorSet from_mask(std::uint32_t mask) { return SensorSet(mask); }
    static SensorSet of(std::initializer_list<int> indices) {
        std::uint32_t m = 0;
        for (int i : indices) m |= (1u << i);
        return SensorSet(m);
    }
    static constexpr SensorSet full(int m) {
        return SensorSet(m >= 32 ? ~0u : ((1u << m) - 1u));
    }

    constexpr bool contains(int i) const { return (mask_ >> i) & 1u; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr int count() const { return std::popcount(mask_); }
    constexpr std::uint32_t mask() const { return mask_; }

    constexpr SensorSet with(int i) const { return SensorSet(mask_ | (1u << i)); }
    constexpr SensorSet without(int i) const { return SensorSet(mask_ & ~(1u << i)); }
    constexpr SensorSet unite(SensorSet o) const { return SensorSet(mask_ | o.mask_); }
    constexpr SensorSet intersect(SensorSet o) const { return SensorSet(mask_ & o.mask_); }
    constexpr SensorSet minus(SensorSet o) const { return SensorSet(mask_ & ~o.mask_); }
    constexpr SensorSet complement(int m) const { return full(m).minus(*this); }
    constexpr bool subset_of(SensorSet o) const { return (mask_ & ~o.mask_) == 0; }
    constexpr bool disjoint_with(SensorSet o) const { return (mask_ & o.mask_) == 0; }

    constexpr bool operator==(const SensorSet&) const = default;
    constexpr bool operator<(SensorSet o) const { return mask_ < o.mask_; }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (int i = 0; i < 32; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    // Human-readable 1-based form, e.g. "{1,3}".
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int i : indices()) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
        return s + "}";
    }

  private:
    explicit constexpr SensorSet(std::uint32_t mask) : mask_(mask) {}
    std::uint32_t mask_ = 0;
};

}  // namespace byzcode
