#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "byzcode/covers.hpp"
#include "byzcode/joint_pmf.hpp"

namespace byzcode {

// The family of joint distributions whose marginal on every set of `cover`
// equals the corresponding marginal of `base`. The base itself always
// belongs to the family, so it is never empty.
struct MarginalFamily {
    JointPmf base;
    Cover cover;
};

class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error(achieved_error) {}
    double achieved_error;
};

struct MaxEntOptions {
    double tol = 1e-9;       // L-inf bound on every marginal mismatch
    int max_cycles = 100000;
};

struct MaxEntResult {
    JointPmf q;           // converged maximizer
    double entropy_bits;  // H(q) over all sensors
    int cycles;
    double marginal_error;
};

// Maximum-entropy member of the family via iterative proportional scaling
// from the uniform distribution (the I-projection of uniform onto the
// family, which is exactly the entropy maximizer).
MaxEntResult max_entropy_with_marginals(const MarginalFamily& family, MaxEntOptions opts = {});

struct SumRateResult {
    double r_star = 0.0;
    struct PerCover {
        Cover cover;
        double entropy_bits;
        int cycles;
        double marginal_error;
    };
    std::vector<PerCover> covers;
    int argmax = -1;  // index into covers

    const PerCover& best() const { return covers[argmax]; }
};

// Minimum achievable sum rate with up to t traitors: the maximum of
// max_entropy_with_marginals over all minimal covers.
SumRateResult min_achievable_sum_rate(const JointPmf& p, int t, MaxEntOptions opts = {});

// Returns the maximizing distribution alongside the rate (the fabrication
// attack's source law).
struct SumRateWithMaximizer {
    SumRateResult result;
    JointPmf maximizer;
};
SumRateWithMaximizer min_achievable_sum_rate_with_maximizer(const JointPmf& p, int t,
                                                            MaxEntOptions opts = {});

// Closed form for one traitor: H(X_1...X_m) + max_{i,i'} I(X_i;X_{i'}|rest).
double sum_rate_single_traitor(const JointPmf& p);

// Closed form for t = m-1: sum of the single-sensor entropies.
double sum_rate_independent_coding(const JointPmf& p);

// Randomized lower-bound search used as the solver's independent oracle:
// sample feasible points (random pmfs projected onto the marginal
// constraints), keep the best entropy, then refine locally with shrinking
// perturbations. Only intended for small joint alphabets.
struct RandomSearchResult {
    double entropy_bits;
    double constraint_error;
};
RandomSearchResult max_entropy_random_search(const MarginalFamily& family, int samples,
                                             int refine_steps, std::uint64_t seed);

}  // namespace byzcode
