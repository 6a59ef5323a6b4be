#include <doctest.h>

#include <vector>

#include "byzcode/kernels.hpp"
#include "byzcode/rng.hpp"

using namespace byzcode;

namespace {

std::vector<double> random_array(std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.next_double();
    return v;
}

}  // namespace

TEST_CASE("parallel kernels agree with the serial reference") {
    for (std::size_t mid : {std::size_t{64}, std::size_t{1} << 12}) {
        const std::size_t n = 16 * mid;
        std::vector<double> v = random_array(n, 7 + n);
        std::vector<double> w = random_array(n, 9 + n);

        CHECK(kernels::parallel::sum(v) ==
              doctest::Approx(kernels::serial::sum(v)).epsilon(1e-12));
        CHECK(kernels::parallel::entropy_bits(v, 1e-15) ==
              doctest::Approx(kernels::serial::entropy_bits(v, 1e-15)).epsilon(1e-12));
        CHECK(kernels::parallel::max_abs_diff(v, w) ==
              doctest::Approx(kernels::serial::max_abs_diff(v, w)));

        std::vector<int> sizes = {4, static_cast<int>(mid), 4};
        std::vector<std::size_t> strides = {4 * mid, 4, 1};
        auto map = kernels::build_marginal_map(sizes, strides, 0b101u);
        std::vector<double> a(map.sub_count), b(map.sub_count);
        kernels::serial::accumulate_marginal(v, map, a);
        kernels::parallel::accumulate_marginal(v, map, b);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));

        std::vector<double> ratio(map.sub_count);
        for (std::size_t i = 0; i < ratio.size(); ++i) ratio[i] = 0.5 + 0.01 * i;
        std::vector<double> v1 = v, v2 = v;
        kernels::serial::scale_by_marginal_ratio(v1, map, ratio);
        kernels::parallel::scale_by_marginal_ratio(v2, map, ratio);
        CHECK(kernels::serial::max_abs_diff(v1, v2) == 0.0);
    }
}

TEST_CASE("marginal map reproduces a hand-built two-coordinate marginal") {
    // 2x3 joint, keep the second coordinate.
    std::vector<int> sizes = {2, 3};
    std::vector<std::size_t> strides = {3, 1};
    auto map = kernels::build_marginal_map(sizes, strides, 0b10u);
    REQUIRE(map.sub_count == 3);
    std::vector<double> joint = {0.1, 0.2, 0.3, 0.05, 0.15, 0.2};
    std::vector<double> out(3);
    kernels::serial::accumulate_marginal(joint, map, out);
    CHECK(out[0] == doctest::Approx(0.15));
    CHECK(out[1] == doctest::Approx(0.35));
    CHECK(out[2] == doctest::Approx(0.5));
}

TEST_CASE("entropy kernel treats tiny probabilities as zero") {
    std::vector<double> v = {1.0, 1e-16, 0.0};
    CHECK(kernels::serial::entropy_bits(v, 1e-15) == doctest::Approx(0.0));
}
