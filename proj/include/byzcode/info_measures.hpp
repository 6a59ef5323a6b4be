#pragma once

#include <cstdint>
#include <span>

#include "byzcode/joint_pmf.hpp"
#include "byzcode/sensor_set.hpp"

namespace byzcode {

// Information measures in bits. All of these are pure and thread-safe.

// H_q(X_s): entropy of the marginal of q on the nonempty subset s.
double entropy(const JointPmf& q, SensorSet s);

// H_q(X_s | X_given) = H(X_s X_given) - H(X_given); given may be empty.
double conditional_entropy(const JointPmf& q, SensorSet s, SensorSet given);

// I_q(X_a; X_b | X_given) for pairwise-disjoint a, b, given.
double conditional_mutual_information(const JointPmf& q, SensorSet a, SensorSet b,
                                      SensorSet given);

// Marginal pmf on s; sensors keep their relative order.
JointPmf marginalize(const JointPmf& q, SensorSet s);

// q(x_s | context), where context assigns a symbol to every sensor outside s
// (in increasing sensor order). Throws zero_probability_error if the context
// has probability zero.
JointPmf condition(const JointPmf& q, SensorSet s, std::span<const int> context);

// k i.i.d. draws from q, one column per time slot. Deterministic given seed.
SequenceBlock sample_block(const JointPmf& q, int k, std::uint64_t seed);

}  // namespace byzcode
