#pragma once

#include <vector>

#include "byzcode/joint_pmf.hpp"
#include "byzcode/rng.hpp"

namespace byzcode::testutil {

// Dirichlet(1) draw over the joint cells.
inline JointPmf random_pmf(std::vector<int> sizes, RngStream& rng) {
    std::size_t cells = 1;
    for (int s : sizes) cells *= static_cast<std::size_t>(s);
    std::vector<double> probs(cells);
    double total = 0.0;
    for (double& p : probs) {
        p = -std::log(1.0 - rng.next_double());
        total += p;
    }
    for (double& p : probs) p /= total;
    // Nudge the sum to exactly 1 so constructor tolerance never bites.
    double sum = 0.0;
    for (double p : probs) sum += p;
    probs.back() += 1.0 - sum;
    return JointPmf::from_probs(std::move(sizes), std::move(probs));
}

inline JointPmf correlated_pair() {
    return JointPmf::from_probs({2, 2}, {0.4, 0.1, 0.1, 0.4});
}

// X1, X2 independent uniform bits, X3 = X1 AND X2.
inline JointPmf and_source() {
    std::vector<double> probs(8, 0.0);
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) probs[(x1 << 2) | (x2 << 1) | (x1 & x2)] = 0.25;
    return JointPmf::from_probs({2, 2, 2}, std::move(probs));
}

// X1 = X2 = X3, uniform.
inline JointPmf equal_bits_source() {
    std::vector<double> probs(8, 0.0);
    probs[0] = 0.5;
    probs[7] = 0.5;
    return JointPmf::from_probs({2, 2, 2}, std::move(probs));
}

// Correlated pair tensored with an independent uniform third sensor.
inline JointPmf pair_with_uniform_third() {
    return JointPmf::product(correlated_pair(), JointPmf::uniform({2}));
}

}  // namespace byzcode::testutil
