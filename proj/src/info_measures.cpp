#include "byzcode/info_measures.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "byzcode/kernels.hpp"
#include "byzcode/rng.hpp"

namespace byzcode {

namespace {

void check_subset(const JointPmf& q, SensorSet s, const char* who) {
    if (!s.subset_of(SensorSet::full(q.dimensions())))
        throw std::invalid_argument(std::string(who) + ": sensor set out of range");
}

}  // namespace

JointPmf marginalize(const JointPmf& q, SensorSet s) {
    check_subset(q, s, "marginalize");
    if (s.empty()) throw std::invalid_argument("marginalize: empty sensor set");
    if (s == SensorSet::full(q.dimensions())) return q;

    auto map = kernels::build_marginal_map(q.alphabet_sizes(), q.strides(), s.mask());
    std::vector<double> out(map.sub_count, 0.0);
    kernels::accumulate_marginal(q.probs(), map, out);

    std::vector<int> sizes;
    for (int i : s.indices()) sizes.push_back(q.alphabet_size(i));
    return JointPmf::from_probs(std::move(sizes), std::move(out));
}

double entropy(const JointPmf& q, SensorSet s) {
    check_subset(q, s, "entropy");
    if (s.empty()) throw std::invalid_argument("entropy: empty sensor set");
    if (s == SensorSet::full(q.dimensions()))
        return kernels::entropy_bits(q.probs(), JointPmf::kZeroTol);
    JointPmf marg = marginalize(q, s);
    return kernels::entropy_bits(marg.probs(), JointPmf::kZeroTol);
}

double conditional_entropy(const JointPmf& q, SensorSet s, SensorSet given) {
    if (s.empty()) throw std::invalid_argument("conditional_entropy: empty target set");
    if (!s.disjoint_with(given))
        throw std::invalid_argument("conditional_entropy: target and given sets overlap");
    if (given.empty()) return entropy(q, s);
    return entropy(q, s.unite(given)) - entropy(q, given);
}

double conditional_mutual_information(const JointPmf& q, SensorSet a, SensorSet b,
                                      SensorSet given) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("conditional_mutual_information: empty set");
    if (!a.disjoint_with(b) || !a.disjoint_with(given) || !b.disjoint_with(given))
        throw std::invalid_argument("conditional_mutual_information: sets overlap");
    return conditional_entropy(q, a, given) - conditional_entropy(q, a, b.unite(given));
}

JointPmf condition(const JointPmf& q, SensorSet s, std::span<const int> context) {
    check_subset(q, s, "condition");
    if (s.empty()) throw std::invalid_argument("condition: empty sensor set");
    const int m = q.dimensions();
    SensorSet rest = s.complement(m);
    if (context.size() != static_cast<std::size_t>(rest.count()))
        throw std::invalid_argument("condition: context must cover exactly the complement of s");

    // Fix the context coordinates, walk the s-cells.
    std::vector<int> symbols(m, 0);
    {
        int j = 0;
        for (int i : rest.indices()) symbols[i] = context[j++];
    }
    std::vector<int> s_idx = s.indices();
    std::vector<int> sizes;
    std::size_t cells = 1;
    for (int i : s_idx) {
        sizes.push_back(q.alphabet_size(i));
        cells *= static_cast<std::size_t>(q.alphabet_size(i));
    }
    std::vector<double> probs(cells, 0.0);
    for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rest_c = c;
        for (int j = static_cast<int>(s_idx.size()) - 1; j >= 0; --j) {
            symbols[s_idx[j]] = static_cast<int>(rest_c % sizes[j]);
            rest_c /= sizes[j];
        }
        probs[c] = q.prob(q.index_of(symbols));
    }
    double total = kernels::serial::sum(probs);
    if (total <= JointPmf::kZeroTol)
        throw zero_probability_error("condition: context has probability zero");
    for (double& p : probs) p /= total;
    return JointPmf::from_probs(std::move(sizes), std::move(probs));
}

SequenceBlock sample_block(const JointPmf& q, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("sample_block: k must be >= 1");
    const int m = q.dimensions();
    // Cumulative distribution over cells, walked once per draw.
    std::vector<double> cdf(q.cell_count());
    double acc = 0.0;
    for (std::size_t c = 0; c < q.cell_count(); ++c) {
        acc += q.prob(c);
        cdf[c] = acc;
    }
    cdf.back() = 1.0;

    RngStream rng = RngStream(seed).derive(0x5a3c);
    SequenceBlock block(m, k);
    std::vector<int> symbols(m);
    for (int t = 0; t < k; ++t) {
        double u = rng.next_double();
        std::size_t lo = 0, hi = q.cell_count() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (u < cdf[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        q.decode_index(lo, symbols);
        for (int i = 0; i < m; ++i) block.set_symbol(i, t, static_cast<std::uint8_t>(symbols[i]));
    }
    return block;
}

}  // namespace byzcode
