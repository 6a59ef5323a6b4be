#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace byzcode::kernels {

// Hot loops over flat pmf arrays. Each kernel has a serial reference and an
// OpenMP variant; the serial versions are kept as the correctness oracle for
// the parallel ones (see tests/ and tools/bench_kernels). `run_parallel()`
// picks the OpenMP path when the array is large enough to be worth it.

// Map from a joint cell index to the cell index of the marginal on a sensor
// subset; built once and reused across iterative-scaling sweeps.
struct MarginalMap {
    std::vector<std::uint32_t> cell_to_sub;  // joint cell -> marginal cell
    std::size_t sub_count = 0;
};

MarginalMap build_marginal_map(std::span<const int> alphabet_sizes,
                               std::span<const std::size_t> strides,
                               std::uint32_t subset_mask);

namespace serial {
double sum(std::span<const double> v);
// -sum p log2 p with p < zero_tol treated as exact zero.
double entropy_bits(std::span<const double> v, double zero_tol);
void accumulate_marginal(std::span<const double> joint, const MarginalMap& map,
                         std::span<double> out);
// q[i] *= ratio[map[i]]  (the iterative-scaling update)
void scale_by_marginal_ratio(std::span<double> joint, const MarginalMap& map,
                             std::span<const double> ratio);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
}  // namespace serial

namespace parallel {
double sum(std::span<const double> v);
double entropy_bits(std::span<const double> v, double zero_tol);
void accumulate_marginal(std::span<const double> joint, const MarginalMap& map,
                         std::span<double> out);
void scale_by_marginal_ratio(std::span<double> joint, const MarginalMap& map,
                             std::span<const double> ratio);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
}  // namespace parallel

// Arrays below this many cells always take the serial path.
inline constexpr std::size_t kParallelThreshold = 1u << 15;

bool run_parallel(std::size_t n);

inline double sum(std::span<const double> v) {
    return run_parallel(v.size()) ? parallel::sum(v) : serial::sum(v);
}
inline double entropy_bits(std::span<const double> v, double zero_tol) {
    return run_parallel(v.size()) ? parallel::entropy_bits(v, zero_tol)
                                  : serial::entropy_bits(v, zero_tol);
}
inline void accumulate_marginal(std::span<const double> joint, const MarginalMap& map,
                                std::span<double> out) {
    if (run_parallel(joint.size()))
        parallel::accumulate_marginal(joint, map, out);
    else
        serial::accumulate_marginal(joint, map, out);
}
inline void scale_by_marginal_ratio(std::span<double> joint, const MarginalMap& map,
                                    std::span<const double> ratio) {
    if (run_parallel(joint.size()))
        parallel::scale_by_marginal_ratio(joint, map, ratio);
    else
        serial::scale_by_marginal_ratio(joint, map, ratio);
}
inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    return run_parallel(a.size()) ? parallel::max_abs_diff(a, b) : serial::max_abs_diff(a, b);
}

}  // namespace byzcode::kernels
