#include "byzcode/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace byzcode {

std::size_t RngStream::next_weighted(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw std::invalid_argument("next_weighted: nonpositive total weight");
    double u = next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.size() - 1;
}

int RngStream::next_poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean > 32.0) throw std::invalid_argument("next_poisson: mean too large for inversion");
    double u = next_double();
    double p = std::exp(-mean);
    double cdf = p;
    int k = 0;
    while (u >= cdf && k < 1024) {
        ++k;
        p *= mean / k;
        cdf += p;
    }
    return k;
}

}  // namespace byzcode
