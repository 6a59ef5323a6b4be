#include "byzcode/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "byzcode/info_measures.hpp"

namespace byzcode {

namespace {

// Frequency pmf of the tuples formed by the given block rows.
JointPmf type_on_rows(const SequenceBlock& block, const std::vector<int>& rows,
                      std::vector<int> selected_sizes) {
    if (block.length < 1) throw std::invalid_argument("empirical_type: empty block");
    std::size_t cells = 1;
    for (int s : selected_sizes) cells *= static_cast<std::size_t>(s);
    std::vector<double> counts(cells, 0.0);
    for (int t = 0; t < block.length; ++t) {
        std::size_t cell = 0;
        for (std::size_t j = 0; j < rows.size(); ++j) {
            int sym = block.symbol(rows[j], t);
            if (sym >= selected_sizes[j])
                throw std::invalid_argument("empirical_type: symbol out of range");
            cell = cell * static_cast<std::size_t>(selected_sizes[j]) +
                   static_cast<std::size_t>(sym);
        }
        counts[cell] += 1.0;
    }
    const double k = static_cast<double>(block.length);
    for (double& c : counts) c /= k;
    return JointPmf::from_probs(std::move(selected_sizes), std::move(counts));
}

}  // namespace

JointPmf empirical_type(const SequenceBlock& block, SensorSet s,
                        std::span<const int> alphabet_sizes) {
    if (s.empty()) throw std::invalid_argument("empirical_type: empty sensor set");
    std::vector<int> rows = s.indices();
    std::vector<int> sizes;
    for (int i : rows) sizes.push_back(alphabet_sizes[i]);
    return type_on_rows(block, rows, std::move(sizes));
}

bool is_typical(const SequenceBlock& block, SensorSet s, const JointPmf& ref, double eps) {
    if (s.empty()) throw std::invalid_argument("is_typical: empty sensor set");
    std::vector<int> rows = s.indices();

    JointPmf marginal = [&] {
        if (ref.dimensions() == static_cast<int>(rows.size())) return ref;
        if (ref.dimensions() == block.sensors) return marginalize(ref, s);
        throw std::invalid_argument("is_typical: reference shape matches neither s nor the block");
    }();

    JointPmf type = type_on_rows(block, rows, marginal.alphabet_sizes());
    for (std::size_t c = 0; c < marginal.cell_count(); ++c) {
        double t = type.prob(c);
        double q = marginal.prob(c);
        if (std::abs(t - q) > eps) return false;
        if (q <= JointPmf::kZeroTol && t > 0.0) return false;
    }
    return true;
}

bool in_cover_typical_set(const SequenceBlock& block, const Cover& cover, const JointPmf& p,
                          double eps) {
    for (SensorSet s : cover.sets)
        if (!is_typical(block, s, p, eps)) return false;
    return true;
}

double conditional_type_entropy(std::span<const std::uint8_t> candidate,
                                const SequenceBlock& context) {
    const int k = static_cast<int>(candidate.size());
    if (k < 1) throw std::invalid_argument("conditional_type_entropy: empty candidate");
    if (context.sensors > 0 && context.length != k)
        throw std::invalid_argument("conditional_type_entropy: length mismatch");

    // Group positions by context tuple, count candidate symbols per group.
    int max_ctx = 1;
    std::vector<int> ctx_radix(context.sensors, 0);
    for (int i = 0; i < context.sensors; ++i) {
        int hi = 0;
        for (int t = 0; t < k; ++t) hi = std::max(hi, static_cast<int>(context.symbol(i, t)));
        ctx_radix[i] = hi + 1;
        max_ctx *= hi + 1;
    }
    int max_sym = 0;
    for (std::uint8_t c : candidate) max_sym = std::max(max_sym, static_cast<int>(c));
    const int nsym = max_sym + 1;

    std::vector<int> counts(static_cast<std::size_t>(max_ctx) * nsym, 0);
    std::vector<int> group_total(max_ctx, 0);
    for (int t = 0; t < k; ++t) {
        int code = 0;
        for (int i = 0; i < context.sensors; ++i)
            code = code * ctx_radix[i] + context.symbol(i, t);
        ++counts[static_cast<std::size_t>(code) * nsym + candidate[t]];
        ++group_total[code];
    }
    double h = 0.0;
    for (int g = 0; g < max_ctx; ++g) {
        if (group_total[g] == 0) continue;
        for (int sym = 0; sym < nsym; ++sym) {
            int c = counts[static_cast<std::size_t>(g) * nsym + sym];
            if (c > 0) h -= c * std::log2(static_cast<double>(c) / group_total[g]);
        }
    }
    return h / k;
}

bool in_target_set(std::span<const std::uint8_t> candidate, const SequenceBlock& context,
                   double rate, const TypicalityParams& params) {
    params.validate();
    return conditional_type_entropy(candidate, context) <= rate + params.epsilon_prime() + 1e-12;
}

bool cover_marginals_close(const SequenceBlock& block, const Cover& cover, const JointPmf& p,
                           double eps, double eps_prime) {
    if (!in_cover_typical_set(block, cover, p, eps))
        throw std::invalid_argument(
            "cover_marginals_close: block is outside the cover typical set");
    for (SensorSet s : cover.sets)
        if (!is_typical(block, s, p, eps_prime)) return false;
    return true;
}

}  // namespace byzcode
