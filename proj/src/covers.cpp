#include "byzcode/covers.hpp"

#include <stdexcept>

namespace byzcode {

std::vector<SensorSet> all_candidate_honest_sets(int m, int t) {
    if (m < 1 || m > 16) throw std::invalid_argument("all_candidate_honest_sets: bad m");
    if (t < 0 || t > m - 1) throw std::invalid_argument("all_candidate_honest_sets: t must be in [0, m-1]");
    std::vector<SensorSet> out;
    const std::uint32_t full = (1u << m) - 1u;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        if (std::popcount(mask) == m - t) out.push_back(SensorSet::from_mask(mask));
    }
    return out;
}

std::vector<Cover> enumerate_minimal_covers(int m, int t) {
    const std::vector<SensorSet> family = all_candidate_honest_sets(m, t);
    const int n = static_cast<int>(family.size());
    if (n > 24) throw std::invalid_argument("enumerate_minimal_covers: desk scale is m <= 6");
    const std::uint32_t full = (1u << m) - 1u;

    // A minimal cover has at most m members (each must add a new sensor),
    // so the brute-force scan over member subsets stays small at desk scale.
    std::vector<Cover> covers;
    for (std::uint32_t pick = 1; pick < (1u << n); ++pick) {
        if (std::popcount(pick) > m) continue;
        std::uint32_t united = 0;
        for (int j = 0; j < n; ++j)
            if ((pick >> j) & 1u) united |= family[j].mask();
        if (united != full) continue;
        bool minimal = true;
        for (int j = 0; j < n && minimal; ++j) {
            if (!((pick >> j) & 1u)) continue;
            std::uint32_t without = 0;
            for (int l = 0; l < n; ++l)
                if (l != j && ((pick >> l) & 1u)) without |= family[l].mask();
            if (without == full) minimal = false;
        }
        if (!minimal) continue;
        Cover c;
        c.m = m;
        c.t = t;
        for (int j = 0; j < n; ++j)
            if ((pick >> j) & 1u) c.sets.push_back(family[j]);
        covers.push_back(std::move(c));
    }
    return covers;
}

}  // namespace byzcode
