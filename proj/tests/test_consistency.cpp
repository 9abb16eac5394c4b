#include <map>
#include <set>

#include "doctest.h"

#include "support/oracles.hpp"
#include "ubb/consistency.hpp"
#include "ubb/errors.hpp"
#include "ubb/operators.hpp"
#include "ubb/problems.hpp"
#include "ubb/rng.hpp"
#include "ubb/stats.hpp"

using namespace ubb;

namespace {

std::vector<std::string> texts(const std::vector<BitString>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(x.to_string());
    return out;
}

std::vector<BlockObservation> no_history() { return {}; }

} // namespace

TEST_CASE("consistent set for one observation at dim 3") {
    const ConsistencyQuery q{{BitString::parse("000")}, {1}, 3};
    CHECK(texts(consistent_set(q)) == std::vector<std::string>{"011", "101", "110"});
    CHECK(count_consistent(q) == 3);
}

TEST_CASE("consistent set agrees with brute force") {
    Rng rng(3);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t dim = 1 + rng.below(10);
        ConsistencyQuery q;
        q.dim = dim;
        const auto hidden = BitString::random(dim, rng);
        const std::size_t t = rng.below(5);
        for (std::size_t i = 0; i < t; ++i) {
            q.points.push_back(BitString::random(dim, rng));
            q.values.push_back(rng.below(3) == 0 ? static_cast<std::int64_t>(rng.below(dim + 1))
                                                 : static_cast<std::int64_t>(dim - hamming_distance(q.points.back(), hidden)));
        }
        CHECK(texts(consistent_set(q)) == oracle::consistent(dim, texts(q.points), q.values));
    }
}

TEST_CASE("choose_consistent is uniform over the consistent set") {
    Rng rng(5);
    auto check_uniform = [&](const ConsistencyQuery& q) {
        const auto expected = oracle::consistent(q.dim, texts(q.points), q.values);
        REQUIRE_FALSE(expected.empty());
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < expected.size(); ++i) index[expected[i]] = i;
        std::vector<std::uint64_t> counts(expected.size(), 0);
        std::size_t outside = 0;
        for (int i = 0; i < 100000; ++i) {
            const auto it = index.find(choose_consistent(q, rng).to_string());
            if (it == index.end()) {
                ++outside;
            } else {
                ++counts[it->second];
            }
        }
        CHECK(outside == 0);
        const std::vector<double> probs(expected.size(), 1.0 / static_cast<double>(expected.size()));
        CHECK(stats::goodness_of_fit(counts, probs).p_value > 1e-3);
    };
    check_uniform({{BitString::parse("000")}, {1}, 3});
    for (int rep = 0; rep < 5; ++rep) {
        ConsistencyQuery q;
        q.dim = 6 + rng.below(5);
        const auto hidden = BitString::random(q.dim, rng);
        for (int i = 0; i < 3; ++i) {
            q.points.push_back(BitString::random(q.dim, rng));
            q.values.push_back(static_cast<std::int64_t>(q.dim - hamming_distance(q.points.back(), hidden)));
        }
        check_uniform(q);
    }
}

TEST_CASE("contradictory observations fall back to the whole cube") {
    const auto x = BitString::parse("000");
    const ConsistencyQuery q{{x, x}, {0, 3}, 3};
    CHECK(count_consistent(q) == 0);
    Rng rng(7);
    std::vector<std::uint64_t> counts(8, 0);
    for (int i = 0; i < 80000; ++i) ++counts[choose_consistent(q, rng).code()];
    const std::vector<double> probs(8, 1.0 / 8.0);
    CHECK(stats::goodness_of_fit(counts, probs).p_value > 1e-3);
}

TEST_CASE("the hidden string is always consistent with real oracle answers") {
    Rng rng(11);
    std::size_t misses = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t dim = 1 + rng.below(16);
        const auto inst = std::get<OneMaxInstance>(random_instance(ProblemClass::OneMax, dim, rng.next_u64()));
        ConsistencyQuery q;
        q.dim = dim;
        const std::size_t t = 1 + rng.below(8);
        for (std::size_t i = 0; i < t; ++i) {
            q.points.push_back(BitString::random(dim, rng));
            q.values.push_back(static_cast<std::int64_t>(evaluate_onemax(inst, q.points.back())));
        }
        const auto set = consistent_set(q);
        if (!(std::find(set.begin(), set.end(), inst.z) != set.end())) ++misses;
    }
    CHECK(misses == 0);
}

TEST_CASE("enumeration refuses dimensions above 24") {
    const ConsistencyQuery q{{}, {}, 25};
    CHECK_THROWS_AS(count_consistent(q), ExactEnumerationUnavailable);
}

TEST_CASE("choose_consistent_sub: a pinned block of size 1 is deterministic") {
    const auto anchor = BitString::parse("1010");
    auto anchor_c = anchor;
    anchor_c.flip(2);
    const std::vector<std::size_t> block{2};
    // The observation agrees with the hidden block bit: it is 1 there.
    const std::vector<BlockObservation> history{{anchor_c, 1}};
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        CHECK(choose_consistent_sub(block, history, anchor_c, anchor, rng).to_string() == anchor_c.to_string());
    }
}

TEST_CASE("choose_consistent_sub: pinned block {1,2,3} of n = 6") {
    const auto anchor = BitString::parse("000110");
    const auto anchor_c = BitString::parse("111110");
    const std::vector<std::size_t> block{0, 1, 2};
    // Three observations whose block agreements leave only 101.
    const std::vector<BlockObservation> history{
        {BitString::parse("100110"), 2}, {BitString::parse("010110"), 0}, {BitString::parse("001110"), 2}};
    REQUIRE(oracle::consistent(3, {"100", "010", "001"}, {2, 0, 2}) == std::vector<std::string>{"101"});
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        CHECK(choose_consistent_sub(block, history, anchor_c, anchor, rng).to_string() == "101110");
    }
}

TEST_CASE("choose_consistent_sub without history is uniform on the block and keeps the rest") {
    const auto anchor = BitString::parse("0011001");
    const auto anchor_c = BitString::parse("1111001");
    const std::vector<std::size_t> block{0, 1};
    Rng rng(19);
    std::vector<std::uint64_t> counts(4, 0);
    std::size_t outside_changed = 0;
    for (int i = 0; i < 40000; ++i) {
        const auto y = choose_consistent_sub(block, no_history(), anchor_c, anchor, rng);
        for (std::size_t p = 2; p < 7; ++p) outside_changed += y[p] != anchor[p] ? 1 : 0;
        ++counts[(y[0] ? 2 : 0) + (y[1] ? 1 : 0)];
    }
    CHECK(outside_changed == 0);
    const std::vector<double> probs(4, 0.25);
    CHECK(stats::goodness_of_fit(counts, probs).p_value > 1e-3);
}

TEST_CASE("choose_consistent_sub never touches bits outside the block") {
    Rng rng(23);
    for (int rep = 0; rep < 500; ++rep) {
        const std::size_t n = 2 + rng.below(40);
        const auto anchor = BitString::random(n, rng);
        auto anchor_c = anchor;
        std::vector<std::size_t> block;
        for (std::size_t i = 0; i < n; ++i) {
            if (block.size() < 10 && rng.below(3) == 0) {
                anchor_c.flip(i);
                block.push_back(i);
            }
        }
        if (block.empty()) continue;
        std::vector<BlockObservation> history;
        for (int i = 0; i < 3; ++i) {
            history.push_back({random_where_different(anchor, anchor_c, rng), static_cast<std::int64_t>(rng.below(block.size() + 1))});
        }
        const auto y = choose_consistent_sub(block, history, anchor_c, anchor, rng);
        const auto moved = differing_positions(y, anchor);
        for (auto p : moved) CHECK(std::binary_search(block.begin(), block.end(), p));
    }
}

TEST_CASE("choose_consistent_sub contracts") {
    const auto anchor = BitString::parse("0000");
    const auto anchor_c = BitString::parse("1100");
    Rng rng(29);
    const std::vector<std::size_t> wrong_block{0, 2};
    CHECK_THROWS_AS(choose_consistent_sub(wrong_block, no_history(), anchor_c, anchor, rng), ContractViolation);
    const std::vector<std::size_t> block{0, 1};
    const std::vector<BlockObservation> off_block{{BitString::parse("0010"), 1}};
    CHECK_THROWS_AS(choose_consistent_sub(block, off_block, anchor_c, anchor, rng), ContractViolation);
}
