#include "byzcode/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace byzcode::kernels {

bool run_parallel(std::size_t n) {
#ifdef _OPENMP
    return n >= kParallelThreshold;
#else
    (void)n;
    return false;
#endif
}

MarginalMap build_marginal_map(std::span<const int> alphabet_sizes,
                               std::span<const std::size_t> strides,
                               std::uint32_t subset_mask) {
    const int m = static_cast<int>(alphabet_sizes.size());
    std::size_t joint_cells = 1;
    for (int i = 0; i < m; ++i) joint_cells *= static_cast<std::size_t>(alphabet_sizes[i]);

    // Strides of the retained coordinates inside the marginal array.
    std::size_t sub_count = 1;
    std::vector<std::size_t> sub_stride(m, 0);
    for (int i = m - 1; i >= 0; --i) {
        if ((subset_mask >> i) & 1u) {
            sub_stride[i] = sub_count;
            sub_count *= static_cast<std::size_t>(alphabet_sizes[i]);
        }
    }

    MarginalMap map;
    map.sub_count = sub_count;
    map.cell_to_sub.resize(joint_cells);
    std::vector<int> symbols(m, 0);
    for (std::size_t cell = 0; cell < joint_cells; ++cell) {
        std::size_t sub = 0;
        std::size_t rest = cell;
        for (int i = 0; i < m; ++i) {
            int sym = static_cast<int>(rest / strides[i]);
            rest %= strides[i];
            if ((subset_mask >> i) & 1u) sub += sub_stride[i] * static_cast<std::size_t>(sym);
        }
        map.cell_to_sub[cell] = static_cast<std::uint32_t>(sub);
    }
    return map;
}

namespace serial {

double sum(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
}

double entropy_bits(std::span<const double> v, double zero_tol) {
    double acc = 0.0;
    for (double p : v) {
        if (p > zero_tol) acc -= p * std::log2(p);
    }
    return acc;
}

void accumulate_marginal(std::span<const double> joint, const MarginalMap& map,
                         std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < joint.size(); ++i) out[map.cell_to_sub[i]] += joint[i];
}

void scale_by_marginal_ratio(std::span<double> joint, const MarginalMap& map,
                             std::span<const double> ratio) {
    for (std::size_t i = 0; i < joint.size(); ++i) joint[i] *= ratio[map.cell_to_sub[i]];
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace serial

namespace parallel {

double sum(std::span<const double> v) {
    double acc = 0.0;
    const double* p = v.data();
    const std::int64_t n = static_cast<std::int64_t>(v.size());
#pragma omp parallel for reduction(+ : acc) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) acc += p[i];
    return acc;
}

double entropy_bits(std::span<const double> v, double zero_tol) {
    double acc = 0.0;
    const double* p = v.data();
    const std::int64_t n = static_cast<std::int64_t>(v.size());
#pragma omp parallel for reduction(+ : acc) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        if (p[i] > zero_tol) acc -= p[i] * std::log2(p[i]);
    }
    return acc;
}

void accumulate_marginal(std::span<const double> joint, const MarginalMap& map,
                         std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const std::int64_t n = static_cast<std::int64_t>(joint.size());
    const std::size_t sub = map.sub_count;
#pragma omp parallel
    {
        std::vector<double> local(sub, 0.0);
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 0; i < n; ++i) local[map.cell_to_sub[i]] += joint[i];
#pragma omp critical(byzcode_marginal_merge)
        for (std::size_t j = 0; j < sub; ++j) out[j] += local[j];
    }
}

void scale_by_marginal_ratio(std::span<double> joint, const MarginalMap& map,
                             std::span<const double> ratio) {
    double* p = joint.data();
    const std::int64_t n = static_cast<std::int64_t>(joint.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) p[i] *= ratio[map.cell_to_sub[i]];
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    const std::int64_t n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace parallel

}  // namespace byzcode::kernels
