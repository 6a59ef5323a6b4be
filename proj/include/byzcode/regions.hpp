#pragma once

#include <string>
#include <vector>

#include "byzcode/joint_pmf.hpp"
#include "byzcode/sensor_set.hpp"

namespace byzcode {

// Rate tuple in bits per symbol, one entry per sensor.
struct RatePoint {
    std::vector<double> rates;

    double sum() const {
        double s = 0.0;
        for (double r : rates) s += r;
        return s;
    }
};

inline constexpr double kRegionTol = 1e-9;

// Slepian-Wolf membership for the sensors in s: for every nonempty u <= s,
// sum_{i in u} R_i >= H(X_u | X_{s minus u}) - tol.
bool in_slepian_wolf_region(const RatePoint& rates, const JointPmf& p, SensorSet s,
                            double tol = kRegionTol);

// Intersection of the Slepian-Wolf regions of all size-k sensor subsets.
bool in_rate_region_k(const RatePoint& rates, const JointPmf& p, int k, double tol = kRegionTol);

// Fixed-rate achievable regions: deterministic coding needs every
// max{1, m-2t} subset in its Slepian-Wolf region, randomized coding every
// (m-t) subset.
bool in_deterministic_fixed_rate_region(const RatePoint& rates, const JointPmf& p, int t,
                                        double tol = kRegionTol);
bool in_randomized_fixed_rate_region(const RatePoint& rates, const JointPmf& p, int t,
                                     double tol = kRegionTol);

// First constraint a rate point violates, for diagnostics. Empty string when
// the point is inside the region.
std::string first_violated_constraint(const RatePoint& rates, const JointPmf& p, int k,
                                      double tol = kRegionTol);

struct MinSumRateResult {
    double sum_bits;
    RatePoint rates;  // an optimizer
};

// Minimum total rate over the size-k region, by linear programming on the
// explicitly enumerated constraint list.
MinSumRateResult min_sum_rate(const JointPmf& p, int k);

// Fixed-rate versus variable-rate comparison for m = 3, t = 1.
struct GapReport {
    double variable_rate;            // single-traitor closed form
    double fixed_rate_lower_bound;   // LP minimum over the pairwise region
    double gap;                      // fixed - variable
    double pairwise_half_sum;        // (H12 + H13 + H23) / 2
    RatePoint fixed_rate_optimizer;
};
GapReport fixed_vs_variable_gap(const JointPmf& p);

}  // namespace byzcode
