#pragma once

#include <span>
#include <stdexcept>

#include "byzcode/covers.hpp"
#include "byzcode/joint_pmf.hpp"

namespace byzcode {

// Typicality tolerances. epsilon is the per-cell deviation bound for strong
// typicality; the derived slacks follow a fixed schedule so a whole
// experiment is controlled by the single epsilon knob.
struct TypicalityParams {
    double epsilon = 0.05;

    double epsilon_prime() const { return 2.0 * epsilon; }  // target-set entropy slack
    double epsilon_dot() const { return epsilon; }          // per-phase rate slack

    void validate() const {
        if (!(epsilon > 0.0)) throw std::invalid_argument("TypicalityParams: epsilon must be > 0");
    }
};

// Empirical distribution of the symbol tuples of `block` restricted to s.
// Cell counts are normalized by the block length, so every entry is a
// multiple of 1/k. `alphabet_sizes` describes all sensors of the block.
JointPmf empirical_type(const SequenceBlock& block, SensorSet s,
                        std::span<const int> alphabet_sizes);

// Strong typicality: per-cell |type - ref| <= eps and the type vanishes
// wherever ref does. `ref` may be a pmf over all of the block's sensors
// (it is marginalized onto s) or already the marginal on s.
bool is_typical(const SequenceBlock& block, SensorSet s, const JointPmf& ref, double eps);

// Membership in the set of blocks typical for every candidate honest set of
// the cover, against p's marginals. An empty cover is vacuously true.
bool in_cover_typical_set(const SequenceBlock& block, const Cover& cover, const JointPmf& p,
                          double eps);

// Empirical conditional entropy H(candidate | context) of the joint type,
// in bits per symbol. The context may have zero rows.
double conditional_type_entropy(std::span<const std::uint8_t> candidate,
                                const SequenceBlock& context);

// Decoder target-set membership: true iff the candidate's conditional type
// entropy given the context is at most rate + epsilon_prime. Sequences at
// conditional entropy <= R sit inside some conditional typical set at that
// entropy, so this threshold realizes the union over those sets.
bool in_target_set(std::span<const std::uint8_t> candidate, const SequenceBlock& context,
                   double rate, const TypicalityParams& params);

// Testable consequence of the S-set lemma: the block's own type matches p's
// marginals on every set of the cover within eps_prime per cell. Requires the
// block to be in the cover typical set at the base eps.
bool cover_marginals_close(const SequenceBlock& block, const Cover& cover, const JointPmf& p,
                           double eps, double eps_prime);

}  // namespace byzcode
