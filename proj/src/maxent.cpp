#include "byzcode/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <vector>

#include "byzcode/info_measures.hpp"
#include "byzcode/kernels.hpp"
#include "byzcode/rng.hpp"

namespace byzcode {

namespace {

struct ConstraintSet {
    std::vector<kernels::MarginalMap> maps;
    std::vector<std::vector<double>> targets;  // base marginal per cover set
};

ConstraintSet build_constraints(const MarginalFamily& family) {
    const JointPmf& p = family.base;
    ConstraintSet cs;
    for (SensorSet s : family.cover.sets) {
        if (s.empty()) throw std::invalid_argument("MarginalFamily: empty constraint set");
        auto map = kernels::build_marginal_map(p.alphabet_sizes(), p.strides(), s.mask());
        std::vector<double> target(map.sub_count, 0.0);
        kernels::serial::accumulate_marginal(p.probs(), map, target);
        cs.maps.push_back(std::move(map));
        cs.targets.push_back(std::move(target));
    }
    return cs;
}

double worst_marginal_error(const std::vector<double>& q, const ConstraintSet& cs) {
    double worst = 0.0;
    std::vector<double> marg;
    for (std::size_t j = 0; j < cs.maps.size(); ++j) {
        marg.assign(cs.maps[j].sub_count, 0.0);
        kernels::accumulate_marginal(q, cs.maps[j], marg);
        worst = std::max(worst, kernels::max_abs_diff(marg, cs.targets[j]));
    }
    return worst;
}

// One full pass of proportional fitting over all constraint sets.
void scaling_cycle(std::vector<double>& q, const ConstraintSet& cs) {
    std::vector<double> marg, ratio;
    for (std::size_t j = 0; j < cs.maps.size(); ++j) {
        marg.assign(cs.maps[j].sub_count, 0.0);
        kernels::accumulate_marginal(q, cs.maps[j], marg);
        ratio.resize(marg.size());
        for (std::size_t c = 0; c < marg.size(); ++c) {
            // 0/0 cells carry no mass in the target either; leave them at zero.
            ratio[c] = marg[c] > 0.0 ? cs.targets[j][c] / marg[c] : 0.0;
        }
        kernels::scale_by_marginal_ratio(q, cs.maps[j], ratio);
    }
}

MaxEntResult scale_to_family(std::vector<double> start, const MarginalFamily& family,
                             const ConstraintSet& cs, const MaxEntOptions& opts) {
    double err = worst_marginal_error(start, cs);
    int cycle = 0;
    while (err > opts.tol && cycle < opts.max_cycles) {
        scaling_cycle(start, cs);
        ++cycle;
        err = worst_marginal_error(start, cs);
    }
    if (err > opts.tol)
        throw convergence_error("max_entropy_with_marginals: no convergence after " +
                                    std::to_string(cycle) + " cycles (error " +
                                    std::to_string(err) + ")",
                                err);
    double h = kernels::entropy_bits(start, JointPmf::kZeroTol);
    JointPmf q = JointPmf::from_probs(family.base.alphabet_sizes(), std::move(start));
    return MaxEntResult{std::move(q), h, cycle, err};
}

}  // namespace

MaxEntResult max_entropy_with_marginals(const MarginalFamily& family, MaxEntOptions opts) {
    ConstraintSet cs = build_constraints(family);
    std::vector<double> q(family.base.cell_count(),
                          1.0 / static_cast<double>(family.base.cell_count()));
    return scale_to_family(std::move(q), family, cs, opts);
}

SumRateResult min_achievable_sum_rate(const JointPmf& p, int t, MaxEntOptions opts) {
    return min_achievable_sum_rate_with_maximizer(p, t, opts).result;
}

SumRateWithMaximizer min_achievable_sum_rate_with_maximizer(const JointPmf& p, int t,
                                                            MaxEntOptions opts) {
    std::vector<Cover> covers = enumerate_minimal_covers(p.dimensions(), t);
    SumRateResult out;
    out.covers.resize(covers.size());

    std::vector<JointPmf> maximizers(covers.size(), p);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (covers.size() > 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(covers.size()); ++i) {
        try {
            MaxEntResult r = max_entropy_with_marginals({p, covers[i]}, opts);
            out.covers[i] =
                SumRateResult::PerCover{covers[i], r.entropy_bits, r.cycles, r.marginal_error};
            maximizers[i] = std::move(r.q);
        } catch (...) {
#pragma omp critical(byzcode_maxent_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    out.argmax = 0;
    for (std::size_t i = 1; i < out.covers.size(); ++i)
        if (out.covers[i].entropy_bits > out.covers[out.argmax].entropy_bits)
            out.argmax = static_cast<int>(i);
    out.r_star = out.covers[out.argmax].entropy_bits;
    return SumRateWithMaximizer{std::move(out), std::move(maximizers[out.argmax])};
}

double sum_rate_single_traitor(const JointPmf& p) {
    const int m = p.dimensions();
    if (m < 2) throw std::invalid_argument("sum_rate_single_traitor: need m >= 2");
    SensorSet full = SensorSet::full(m);
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            SensorSet a = SensorSet::of({i});
            SensorSet b = SensorSet::of({j});
            SensorSet rest = full.minus(a).minus(b);
            worst = std::max(worst, conditional_mutual_information(p, a, b, rest));
        }
    }
    return entropy(p, full) + worst;
}

double sum_rate_independent_coding(const JointPmf& p) {
    double sum = 0.0;
    for (int i = 0; i < p.dimensions(); ++i) sum += entropy(p, SensorSet::of({i}));
    return sum;
}

RandomSearchResult max_entropy_random_search(const MarginalFamily& family, int samples,
                                             int refine_steps, std::uint64_t seed) {
    if (family.base.cell_count() > 64)
        throw std::invalid_argument("max_entropy_random_search: joint alphabet above 64 cells");
    ConstraintSet cs = build_constraints(family);
    const std::size_t cells = family.base.cell_count();
    RngStream rng(seed);

    // A handful of scaling cycles is enough to project a strictly positive
    // start onto the family at oracle precision.
    auto project = [&](std::vector<double> q) {
        for (int c = 0; c < 400; ++c) {
            scaling_cycle(q, cs);
            if (worst_marginal_error(q, cs) < 1e-10) break;
        }
        return q;
    };

    std::vector<double> best(family.base.probs().begin(), family.base.probs().end());
    double best_h = kernels::serial::entropy_bits(best, JointPmf::kZeroTol);

    std::vector<double> draw(cells);
    for (int s = 0; s < samples; ++s) {
        double total = 0.0;
        for (double& x : draw) {
            x = -std::log(1.0 - rng.next_double());  // Exp(1) -> Dirichlet(1) after normalizing
            total += x;
        }
        for (double& x : draw) x /= total;
        std::vector<double> q = project(draw);
        double h = kernels::serial::entropy_bits(q, JointPmf::kZeroTol);
        if (h > best_h) {
            best_h = h;
            best = std::move(q);
        }
    }

    double scale = 0.5;
    for (int s = 0; s < refine_steps; ++s) {
        std::vector<double> q = best;
        double total = 0.0;
        for (double& x : q) {
            x *= std::exp(scale * (rng.next_double() - 0.5));
            total += x;
        }
        for (double& x : q) x /= total;
        q = project(std::move(q));
        double h = kernels::serial::entropy_bits(q, JointPmf::kZeroTol);
        if (h > best_h) {
            best_h = h;
            best = std::move(q);
        } else {
            scale *= 0.995;
        }
    }
    return RandomSearchResult{best_h, worst_marginal_error(best, cs)};
}

}  // namespace byzcode
