#include <doctest.h>

#include <json.hpp>

#include "byzcode/joint_pmf.hpp"
#include "test_util.hpp"

using namespace byzcode;

TEST_CASE("construction validates shape and mass") {
    CHECK_THROWS_AS(JointPmf::from_probs({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf::from_probs({0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf::from_probs({2}, {0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf::from_probs({2}, {-0.1, 1.1}), std::invalid_argument);
    CHECK_THROWS_AS(JointPmf::from_probs({2, 2}, {1.0}), std::invalid_argument);
    CHECK_NOTHROW(JointPmf::from_probs({1}, {1.0}));
}

TEST_CASE("row-major indexing round-trips") {
    JointPmf p = JointPmf::uniform({2, 3, 2});
    std::vector<int> symbols(3);
    for (std::size_t cell = 0; cell < p.cell_count(); ++cell) {
        p.decode_index(cell, symbols);
        CHECK(p.index_of(symbols) == cell);
    }
    // last coordinate varies fastest
    CHECK(p.index_of(std::vector<int>{0, 0, 1}) == 1);
    CHECK(p.index_of(std::vector<int>{0, 1, 0}) == 2);
    CHECK(p.index_of(std::vector<int>{1, 0, 0}) == 6);
}

TEST_CASE("json round trip preserves every probability bit-exactly") {
    RngStream rng(11);
    JointPmf p = testutil::random_pmf({2, 3}, rng);
    JointPmf q = JointPmf::from_json(p.to_json());
    CHECK(q.alphabet_sizes() == p.alphabet_sizes());
    for (std::size_t c = 0; c < p.cell_count(); ++c) CHECK(q.prob(c) == p.prob(c));
    CHECK(p.to_json()["schema"] == 1);
}

TEST_CASE("json parse errors carry a field diagnosis") {
    CHECK_THROWS_WITH_AS(JointPmf::from_json(nlohmann::json::array()),
                         doctest::Contains("alphabet_sizes"), std::invalid_argument);
}

TEST_CASE("block row selection keeps sensor order") {
    SequenceBlock b(3, 4);
    for (int i = 0; i < 3; ++i)
        for (int t = 0; t < 4; ++t) b.set_symbol(i, t, static_cast<std::uint8_t>(10 * i + t));
    SequenceBlock sel = b.select(SensorSet::of({0, 2}));
    REQUIRE(sel.sensors == 2);
    CHECK(sel.symbol(0, 3) == 3);
    CHECK(sel.symbol(1, 0) == 20);
}
