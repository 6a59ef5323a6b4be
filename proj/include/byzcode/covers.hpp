#pragma once

#include <string>
#include <vector>

#include "byzcode/sensor_set.hpp"

namespace byzcode {

// A family of candidate honest sets: subsets of {0..m-1} of size m-t.
struct Cover {
    int m = 0;
    int t = 0;
    std::vector<SensorSet> sets;

    SensorSet united() const {
        SensorSet u;
        for (SensorSet s : sets) u = u.unite(s);
        return u;
    }
    bool covers_all() const { return united() == SensorSet::full(m); }
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            if (i) out += "|";
            out += sets[i].to_string();
        }
        return out;
    }
    bool operator==(const Cover&) const = default;
};

// All size-(m-t) subsets of {0..m-1}, ascending by mask.
std::vector<SensorSet> all_candidate_honest_sets(int m, int t);

// Covers V with union {0..m-1} that are minimal under inclusion. Supersets
// are dropped: growing V only shrinks the matching distribution family, so
// they never raise the entropy supremum.
std::vector<Cover> enumerate_minimal_covers(int m, int t);

}  // namespace byzcode
