// Timing comparison of the serial reference kernels against the OpenMP
// variants on pmf arrays of increasing size.
#include <chrono>
#include <cstdio>
#include <vector>

#include "byzcode/kernels.hpp"
#include "byzcode/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_per_call(const auto& fn, int reps) {
    fn();  // warm up
    auto start = Clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto stop = Clock::now();
    return std::chrono::duration<double>(stop - start).count() / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel variants run serially\n");
#endif
    std::printf("%-12s %-22s %12s %12s %8s\n", "cells", "kernel", "serial_ms", "parallel_ms",
                "speedup");

    byzcode::RngStream rng(42);
    for (std::size_t n : {std::size_t{1} << 16, std::size_t{1} << 20, std::size_t{1} << 23}) {
        std::vector<double> v(n);
        double total = 0.0;
        for (double& x : v) {
            x = rng.next_double() + 1e-9;
            total += x;
        }
        for (double& x : v) x /= total;

        std::vector<int> sizes = {2, 2};
        std::size_t rest = n / 4;
        while (rest > 1) {
            sizes.push_back(2);
            rest /= 2;
        }
        std::vector<std::size_t> strides(sizes.size(), 1);
        for (int i = static_cast<int>(sizes.size()) - 2; i >= 0; --i)
            strides[i] = strides[i + 1] * sizes[i + 1];
        auto map = byzcode::kernels::build_marginal_map(sizes, strides, 0x3u);
        std::vector<double> marg(map.sub_count);

        const int reps = n >= (std::size_t{1} << 23) ? 10 : 50;
        struct Case {
            const char* name;
            double s, p;
        };
        std::vector<Case> cases;
        cases.push_back({"sum",
                         seconds_per_call([&] { byzcode::kernels::serial::sum(v); }, reps),
                         seconds_per_call([&] { byzcode::kernels::parallel::sum(v); }, reps)});
        cases.push_back(
            {"entropy_bits",
             seconds_per_call([&] { byzcode::kernels::serial::entropy_bits(v, 1e-15); }, reps),
             seconds_per_call([&] { byzcode::kernels::parallel::entropy_bits(v, 1e-15); }, reps)});
        cases.push_back(
            {"accumulate_marginal",
             seconds_per_call([&] { byzcode::kernels::serial::accumulate_marginal(v, map, marg); },
                              reps),
             seconds_per_call(
                 [&] { byzcode::kernels::parallel::accumulate_marginal(v, map, marg); }, reps)});
        for (const Case& c : cases) {
            std::printf("%-12zu %-22s %12.4f %12.4f %8.2f\n", n, c.name, c.s * 1e3, c.p * 1e3,
                        c.p > 0 ? c.s / c.p : 0.0);
        }
    }
    return 0;
}
