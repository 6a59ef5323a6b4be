#include "byzcode/regions.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "byzcode/info_measures.hpp"
#include "byzcode/maxent.hpp"

namespace byzcode {

namespace {

void check_rates(const RatePoint& rates, const JointPmf& p) {
    if (rates.rates.size() != static_cast<std::size_t>(p.dimensions()))
        throw std::invalid_argument("rate point dimension does not match the pmf");
    for (double r : rates.rates)
        if (!std::isfinite(r) || r < 0.0)
            throw std::invalid_argument("rates must be finite and nonnegative");
}

// Nonempty subsets u of s, as masks.
std::vector<std::uint32_t> nonempty_subsets(SensorSet s) {
    std::vector<int> idx = s.indices();
    std::vector<std::uint32_t> out;
    for (std::uint32_t pick = 1; pick < (1u << idx.size()); ++pick) {
        std::uint32_t mask = 0;
        for (std::size_t j = 0; j < idx.size(); ++j)
            if ((pick >> j) & 1u) mask |= (1u << idx[j]);
        out.push_back(mask);
    }
    return out;
}

struct Constraint {
    SensorSet u;      // rate indices on the left-hand side
    double bound;     // required conditional entropy
    SensorSet scope;  // the size-k set the constraint came from
};

std::vector<Constraint> region_constraints(const JointPmf& p, int k) {
    const int m = p.dimensions();
    if (k < 1 || k > m) throw std::invalid_argument("region: k must be in [1, m]");
    std::vector<Constraint> cons;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != k) continue;
        SensorSet s = SensorSet::from_mask(mask);
        for (std::uint32_t u_mask : nonempty_subsets(s)) {
            SensorSet u = SensorSet::from_mask(u_mask);
            cons.push_back({u, conditional_entropy(p, u, s.minus(u)), s});
        }
    }
    return cons;
}

// min 1'R  s.t.  A R >= b, R >= 0, solved through the dual
// max b'y s.t. A'y <= 1, y >= 0 with a dense tableau and Bland's rule.
// The primal optimizer is read off the slack columns of the final tableau.
MinSumRateResult solve_min_sum(const std::vector<Constraint>& cons, int m) {
    const int n = static_cast<int>(cons.size());
    const int cols = n + m + 1;  // dual vars, slacks, rhs
    std::vector<std::vector<double>> tab(m + 1, std::vector<double>(cols, 0.0));

    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c)
            if (cons[c].u.contains(r)) tab[r][c] = 1.0;
        tab[r][n + r] = 1.0;
        tab[r][cols - 1] = 1.0;  // each rate has unit objective coefficient
    }
    for (int c = 0; c < n; ++c) tab[m][c] = -cons[c].bound;  // maximize b'y

    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) basis[r] = n + r;

    const int max_pivots = 20000;
    for (int iter = 0;; ++iter) {
        if (iter > max_pivots) throw std::runtime_error("min_sum_rate: simplex pivot limit");
        int pivot_col = -1;
        for (int c = 0; c < n + m; ++c) {
            if (tab[m][c] < -1e-11) {
                pivot_col = c;  // Bland: first improving column
                break;
            }
        }
        if (pivot_col < 0) break;
        int pivot_row = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < m; ++r) {
            if (tab[r][pivot_col] > 1e-11) {
                double ratio = tab[r][cols - 1] / tab[r][pivot_col];
                if (pivot_row < 0 || ratio < best_ratio - 1e-12 ||
                    (std::abs(ratio - best_ratio) <= 1e-12 && basis[r] < basis[pivot_row])) {
                    pivot_row = r;
                    best_ratio = ratio;
                }
            }
        }
        if (pivot_row < 0)
            throw std::runtime_error("min_sum_rate: dual unbounded (region must be nonempty)");
        double pv = tab[pivot_row][pivot_col];
        for (int c = 0; c < cols; ++c) tab[pivot_row][c] /= pv;
        for (int r = 0; r <= m; ++r) {
            if (r == pivot_row) continue;
            double f = tab[r][pivot_col];
            if (f == 0.0) continue;
            for (int c = 0; c < cols; ++c) tab[r][c] -= f * tab[pivot_row][c];
        }
        basis[pivot_row] = pivot_col;
    }

    MinSumRateResult out;
    out.sum_bits = tab[m][cols - 1];
    out.rates.rates.assign(m, 0.0);
    for (int r = 0; r < m; ++r) out.rates.rates[r] = std::max(0.0, tab[m][n + r]);
    return out;
}

}  // namespace

bool in_slepian_wolf_region(const RatePoint& rates, const JointPmf& p, SensorSet s, double tol) {
    check_rates(rates, p);
    if (s.empty()) throw std::invalid_argument("in_slepian_wolf_region: empty set");
    for (std::uint32_t u_mask : nonempty_subsets(s)) {
        SensorSet u = SensorSet::from_mask(u_mask);
        double lhs = 0.0;
        for (int i : u.indices()) lhs += rates.rates[i];
        if (lhs < conditional_entropy(p, u, s.minus(u)) - tol) return false;
    }
    return true;
}

bool in_rate_region_k(const RatePoint& rates, const JointPmf& p, int k, double tol) {
    const int m = p.dimensions();
    if (k < 1 || k > m) throw std::invalid_argument("in_rate_region_k: k must be in [1, m]");
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (std::popcount(mask) != k) continue;
        if (!in_slepian_wolf_region(rates, p, SensorSet::from_mask(mask), tol)) return false;
    }
    return true;
}

bool in_deterministic_fixed_rate_region(const RatePoint& rates, const JointPmf& p, int t,
                                        double tol) {
    const int m = p.dimensions();
    if (t < 0 || t > m - 1) throw std::invalid_argument("t must be in [0, m-1]");
    return in_rate_region_k(rates, p, std::max(1, m - 2 * t), tol);
}

bool in_randomized_fixed_rate_region(const RatePoint& rates, const JointPmf& p, int t,
                                     double tol) {
    const int m = p.dimensions();
    if (t < 0 || t > m - 1) throw std::invalid_argument("t must be in [0, m-1]");
    return in_rate_region_k(rates, p, m - t, tol);
}

std::string first_violated_constraint(const RatePoint& rates, const JointPmf& p, int k,
                                      double tol) {
    check_rates(rates, p);
    for (const Constraint& c : region_constraints(p, k)) {
        double lhs = 0.0;
        for (int i : c.u.indices()) lhs += rates.rates[i];
        if (lhs < c.bound - tol) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "sum of rates over %s = %.6f < H%s|%s = %.6f",
                          c.u.to_string().c_str(), lhs, c.u.to_string().c_str(),
                          c.scope.minus(c.u).to_string().c_str(), c.bound);
            return buf;
        }
    }
    return "";
}

MinSumRateResult min_sum_rate(const JointPmf& p, int k) {
    const int m = p.dimensions();
    if (m > 6) throw std::invalid_argument("min_sum_rate: desk scale is m <= 6");
    return solve_min_sum(region_constraints(p, k), m);
}

GapReport fixed_vs_variable_gap(const JointPmf& p) {
    if (p.dimensions() != 3) throw std::invalid_argument("fixed_vs_variable_gap: needs m = 3");
    GapReport rep{};
    rep.variable_rate = sum_rate_single_traitor(p);
    MinSumRateResult lp = min_sum_rate(p, 2);
    rep.fixed_rate_lower_bound = lp.sum_bits;
    rep.fixed_rate_optimizer = lp.rates;
    rep.gap = rep.fixed_rate_lower_bound - rep.variable_rate;
    rep.pairwise_half_sum = 0.5 * (entropy(p, SensorSet::of({0, 1})) +
                                   entropy(p, SensorSet::of({0, 2})) +
                                   entropy(p, SensorSet::of({1, 2})));
    return rep;
}

}  // namespace byzcode
