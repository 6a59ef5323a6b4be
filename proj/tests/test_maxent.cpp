#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "byzcode/info_measures.hpp"
#include "byzcode/maxent.hpp"
#include "test_util.hpp"

using namespace byzcode;
using testutil::correlated_pair;

TEST_CASE("minimal covers: small cases") {
    auto c20 = enumerate_minimal_covers(2, 0);
    REQUIRE(c20.size() == 1);
    CHECK(c20[0].sets == std::vector<SensorSet>{SensorSet::of({0, 1})});

    auto c21 = enumerate_minimal_covers(2, 1);
    REQUIRE(c21.size() == 1);
    REQUIRE(c21[0].sets.size() == 2);
    CHECK(c21[0].sets[0] == SensorSet::of({0}));
    CHECK(c21[0].sets[1] == SensorSet::of({1}));

    // m=3, t=1: exactly the three two-member pair covers
    auto c31 = enumerate_minimal_covers(3, 1);
    REQUIRE(c31.size() == 3);
    for (const Cover& c : c31) {
        CHECK(c.sets.size() == 2);
        CHECK(c.covers_all());
        for (SensorSet s : c.sets) CHECK(s.count() == 2);
    }

    CHECK_THROWS_AS(enumerate_minimal_covers(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_minimal_covers(3, -1), std::invalid_argument);
}

TEST_CASE("minimal covers: every result covers, none is a subset of another") {
    for (int m = 2; m <= 5; ++m) {
        for (int t = 0; t <= m - 1; ++t) {
            auto covers = enumerate_minimal_covers(m, t);
            REQUIRE(!covers.empty());
            for (const Cover& c : covers) {
                CHECK(c.covers_all());
                for (std::size_t drop = 0; drop < c.sets.size(); ++drop) {
                    SensorSet u;
                    for (std::size_t j = 0; j < c.sets.size(); ++j)
                        if (j != drop) u = u.unite(c.sets[j]);
                    CHECK(u != SensorSet::full(m));
                }
            }
        }
    }
}

TEST_CASE("max entropy over a family: t=0 returns p itself") {
    RngStream rng(50);
    JointPmf p = testutil::random_pmf({2, 3}, rng);
    MarginalFamily family{p, enumerate_minimal_covers(2, 0)[0]};
    MaxEntResult r = max_entropy_with_marginals(family);
    CHECK(r.entropy_bits == doctest::Approx(entropy(p, SensorSet::full(2))).epsilon(1e-9));
    CHECK(r.q.max_abs_diff(p) < 1e-9);
}

TEST_CASE("max entropy over a family: binary symmetric pair relaxes to uniform") {
    MarginalFamily family{correlated_pair(), enumerate_minimal_covers(2, 1)[0]};
    MaxEntResult r = max_entropy_with_marginals(family);
    CHECK(r.entropy_bits == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(r.marginal_error <= 1e-9);
}

TEST_CASE("max entropy over a two-set cover matches the decomposition formula") {
    RngStream rng(51);
    for (int it = 0; it < 5; ++it) {
        JointPmf p = testutil::random_pmf({2, 2, 2}, rng);
        // V = {{2,3},{1,3}} (0-based {1,2},{0,2}): H(X2X3) + H(X1|X3)
        Cover v{3, 1, {SensorSet::of({1, 2}), SensorSet::of({0, 2})}};
        MaxEntResult r = max_entropy_with_marginals({p, v});
        double expected = entropy(p, SensorSet::of({1, 2})) +
                          conditional_entropy(p, SensorSet::of({0}), SensorSet::of({2}));
        CHECK(r.entropy_bits == doctest::Approx(expected).epsilon(1e-7));

        // the random-search oracle never beats the solver
        RandomSearchResult oracle = max_entropy_random_search({p, v}, 3000, 2000, 600 + it);
        CHECK(r.entropy_bits >= oracle.entropy_bits - 1e-3);
        CHECK(oracle.constraint_error < 1e-8);
    }
}

TEST_CASE("sum rate endpoints: t=0 and t=m-1 closed forms") {
    RngStream rng(52);
    for (auto sizes : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {2, 2, 2}}) {
        JointPmf p = testutil::random_pmf(sizes, rng);
        const int m = p.dimensions();
        CHECK(min_achievable_sum_rate(p, 0).r_star ==
              doctest::Approx(entropy(p, SensorSet::full(m))).epsilon(1e-9));
        CHECK(min_achievable_sum_rate(p, m - 1).r_star ==
              doctest::Approx(sum_rate_independent_coding(p)).epsilon(1e-9));
    }
}

TEST_CASE("single-traitor closed form") {
    JointPmf indep = JointPmf::uniform({2, 2, 2});
    CHECK(sum_rate_single_traitor(indep) == doctest::Approx(3.0));

    // m=2 reduces to H(X1) + H(X2)
    JointPmf p2 = correlated_pair();
    CHECK(sum_rate_single_traitor(p2) ==
          doctest::Approx(sum_rate_independent_coding(p2)).epsilon(1e-9));

    // correlated pair tensored with a uniform third: 2.721928 + 0.278072 = 3.0
    JointPmf p3 = testutil::pair_with_uniform_third();
    CHECK(sum_rate_single_traitor(p3) == doctest::Approx(3.0).epsilon(1e-6));

    CHECK_THROWS_AS(sum_rate_single_traitor(JointPmf::uniform({4})), std::invalid_argument);
}

TEST_CASE("independent-coding closed form") {
    CHECK(sum_rate_independent_coding(JointPmf::uniform({2, 2})) == doctest::Approx(2.0));
    JointPmf point = JointPmf::from_probs({2, 2}, {1.0, 0.0, 0.0, 0.0});
    CHECK(sum_rate_independent_coding(point) == doctest::Approx(0.0));
    CHECK(sum_rate_independent_coding(correlated_pair()) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("solver agrees with the t=1 closed form on random sources") {
    RngStream rng(53);
    for (int it = 0; it < 6; ++it) {
        JointPmf p = testutil::random_pmf({2, 2, 2}, rng);
        CHECK(min_achievable_sum_rate(p, 1).r_star ==
              doctest::Approx(sum_rate_single_traitor(p)).epsilon(1e-5));
    }
    for (int it = 0; it < 2; ++it) {
        JointPmf p = testutil::random_pmf({2, 2, 2, 2}, rng);
        CHECK(min_achievable_sum_rate(p, 1).r_star ==
              doctest::Approx(sum_rate_single_traitor(p)).epsilon(1e-5));
    }
}

TEST_CASE("properties: monotone in t, bounded, constraints satisfied, cover dominance") {
    RngStream rng(54);
    for (int it = 0; it < 4; ++it) {
        JointPmf p = testutil::random_pmf({2, 2, 2}, rng);
        const int m = p.dimensions();
        double h = entropy(p, SensorSet::full(m));
        double cap = 0.0;
        for (int i = 0; i < m; ++i) cap += std::log2(static_cast<double>(p.alphabet_size(i)));

        double prev = 0.0;
        for (int t = 0; t <= m - 1; ++t) {
            double r = min_achievable_sum_rate(p, t).r_star;
            CHECK(r >= h - 1e-9);
            CHECK(r <= cap + 1e-9);
            CHECK(r >= prev - 1e-9);
            prev = r;
        }

        // constraint satisfaction of the returned maximizer
        auto best = min_achievable_sum_rate_with_maximizer(p, 1);
        for (SensorSet s : best.result.best().cover.sets)
            CHECK(marginalize(best.maximizer, s).max_abs_diff(marginalize(p, s)) <= 1e-9);

        // growing a cover cannot raise the supremum
        Cover small{3, 1, {SensorSet::of({1, 2})}};
        Cover big{3, 1, {SensorSet::of({1, 2}), SensorSet::of({0, 2})}};
        CHECK(max_entropy_with_marginals({p, small}).entropy_bits >=
              max_entropy_with_marginals({p, big}).entropy_bits - 1e-9);
    }
}

TEST_CASE("random search rejects oversized alphabets") {
    JointPmf p = JointPmf::uniform({3, 3, 3, 3});
    Cover v{4, 1, {SensorSet::of({0, 1, 2})}};
    CHECK_THROWS_AS(max_entropy_random_search({p, v}, 10, 10, 1), std::invalid_argument);
}
