#include <cmath>
#include <numeric>

#include "doctest.h"

#include "support/oracles.hpp"
#include "ubb/algorithms.hpp"
#include "ubb/errors.hpp"
#include "ubb/oracle.hpp"
#include "ubb/rng.hpp"

using namespace ubb;

namespace {

Engine engine_for(ProblemClass cls, std::size_t n, std::uint64_t seed, std::size_t arity,
                  std::optional<std::uint64_t> budget = std::nullopt) {
    // Scrambled so the instance stream never coincides with an algorithm stream.
    return Engine(Oracle(random_instance(cls, n, splitmix64(seed ^ 0x5eedULL)), budget), arity);
}

const BitString& hidden(const Engine& e) { return optimum(EngineInspector(e).instance()); }
const BitString& point(const Engine& e, PointHandle h) { return EngineInspector(e).point(h); }

std::vector<BitString> query_sequence(const Engine& e) {
    std::vector<BitString> out;
    for (const auto& q : EngineInspector(e).oracle().history()) out.push_back(q.point);
    return out;
}

/// Positions where a and b agree must hold the optimum's bits.
bool agreement_is_correct(const BitString& a, const BitString& b, const BitString& z) {
    const auto agree = (a ^ b).complement();
    return ((a ^ z) & agree).popcount() == 0;
}

void check_arity(const Engine& e, std::size_t k) {
    for (const auto& call : e.audit()) CHECK(call.op.arity <= k);
}

double mean(const std::vector<double>& xs) { return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size()); }

} // namespace

TEST_CASE("round size of the *-ary algorithm") {
    // (1 + 4 log log n / log n) 2n / log n with base-2 logs
    auto by_formula = [](double n) {
        const double lg = std::log2(n);
        return static_cast<std::uint64_t>(std::ceil((1.0 + 4.0 * std::log2(lg) / lg) * 2.0 * n / lg));
    };
    CHECK(star_ary_round_size(16) == 24);
    for (std::size_t n : {4u, 8u, 20u, 24u, 100u, 1000u}) CHECK(star_ary_round_size(n) == by_formula(static_cast<double>(n)));
    CHECK(subset_round_size(4) == 2);
    CHECK(subset_round_size(8) == 6);
    CHECK(subset_round_size(16) == 14);
    CHECK(subset_round_size(2) <= 0);
}

TEST_CASE("binary onemax: agreeing positions are always optimal") {
    for (auto cls : {ProblemClass::OneMax, ProblemClass::Monotone}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto e = engine_for(cls, 60, seed, 2);
            Rng rng(seed + 100);
            std::size_t violations = 0;
            const Observer obs = [&](const Engine& en, std::string_view, std::span<const PointHandle> s) {
                if (!agreement_is_correct(point(en, s[0]), point(en, s[1]), hidden(en))) ++violations;
            };
            const auto out = binary_onemax(e, rng, obs);
            CHECK(violations == 0);
            CHECK(point(e, out) == hidden(e));
            check_arity(e, 2);
        }
    }
}

TEST_CASE("*-ary onemax: each round outputs a consistent point, and the run ends at the optimum") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto e = engine_for(ProblemClass::OneMax, 12, seed, kUnboundedArity);
        Rng rng(seed);
        std::size_t rounds = 0;
        const Observer obs = [&](const Engine&, std::string_view event, std::span<const PointHandle>) {
            if (event == "round") ++rounds;
        };
        const auto out = star_ary_onemax(e, rng, obs);
        CHECK(point(e, out) == hidden(e));
        CHECK(e.query_count() == rounds * (star_ary_round_size(12) + 1));
    }
}

TEST_CASE("k-ary onemax: block invariants") {
    for (std::size_t k : {3u, 4u, 8u, 16u}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const std::size_t n = 50;
            auto e = engine_for(ProblemClass::OneMax, n, seed, k);
            Rng rng(seed * 7 + k);
            std::size_t blocks = 0;
            std::size_t last_distance = n;
            std::size_t bad_block = 0;
            std::size_t bad_subset = 0;
            const Observer obs = [&](const Engine& en, std::string_view event, std::span<const PointHandle> s) {
                const auto& z = hidden(en);
                if (event == "block") {
                    const auto& x = point(en, s[0]);
                    const auto& y = point(en, s[1]);
                    const std::size_t ell = std::min(k, n - k * blocks);
                    const std::size_t d = hamming_distance(x, y);
                    if (!agreement_is_correct(x, y, z) || d + ell != last_distance) ++bad_block;
                    last_distance = d;
                    ++blocks;
                } else if (event == "subset") {
                    const auto& ac = point(en, s[0]);
                    const auto& a = point(en, s[1]);
                    const auto& w = point(en, s[2]);
                    const auto block_mask = ac ^ a;
                    const std::size_t ell = block_mask.popcount();
                    // Agreements with z outside the block, straight from the hidden string.
                    const std::size_t suffix = ((a ^ z).complement() & block_mask.complement()).popcount();
                    const bool block_right = ((w ^ z) & block_mask).popcount() == 0;
                    const bool at_target = en.fitness(s[2]) == static_cast<double>(ell + suffix);
                    if (block_right != at_target) ++bad_subset;
                    if (((w ^ a) & block_mask.complement()).popcount() != 0) ++bad_subset;
                }
            };
            const auto out = kary_onemax(e, k, rng, obs);
            CHECK(bad_block == 0);
            CHECK(bad_subset == 0);
            CHECK(blocks == (n + k - 1) / k);
            CHECK(point(e, out) == hidden(e));
            check_arity(e, k);
        }
    }
}

TEST_CASE("f_suffix recomputed from the anchors matches direct evaluation") {
    Rng rng(41);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 3 + rng.below(40);
        const auto inst = std::get<OneMaxInstance>(random_instance(ProblemClass::OneMax, n, rng.next_u64()));
        const auto anchor = BitString::random(n, rng);
        auto anchor_c = anchor;
        std::size_t ell = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.coin()) {
                anchor_c.flip(i);
                ++ell;
            }
        }
        const auto fa = static_cast<std::int64_t>(evaluate_onemax(inst, anchor));
        const auto fc = static_cast<std::int64_t>(evaluate_onemax(inst, anchor_c));
        // Anchor with the whole block set wrong.
        auto wrong = anchor;
        for (auto i : differing_positions(anchor, anchor_c)) wrong.set(i, !inst.z[i]);
        CHECK((fa + fc - static_cast<std::int64_t>(ell)) / 2 == static_cast<std::int64_t>(evaluate_onemax(inst, wrong)));
    }
}

TEST_CASE("binary leadingones keeps a critical pair whose value rises by one per outer iteration") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 40;
        auto e = engine_for(ProblemClass::LeadingOnes, n, seed, 2);
        Rng rng(seed + 3);
        std::optional<double> value;
        std::size_t bad = 0;
        const Observer obs = [&](const Engine& en, std::string_view event, std::span<const PointHandle> s) {
            if (event != "outer") return;
            if (!value) value = std::min(en.fitness(PointHandle{0}), en.fitness(PointHandle{1}));
            const double fx = en.fitness(s[0]);
            const double fy = en.fitness(s[1]);
            const std::size_t agree = n - hamming_distance(point(en, s[0]), point(en, s[1]));
            const bool critical = (fx >= fy && static_cast<double>(agree) == fy) ||
                                  (fy >= fx && static_cast<double>(agree) == fx);
            if (!critical || std::min(fx, fy) != *value + 1) ++bad;
            value = std::min(fx, fy);
        };
        const auto out = binary_leadingones(e, rng, obs);
        CHECK(bad == 0);
        CHECK(point(e, out) == hidden(e));
        check_arity(e, 2);
    }
}

TEST_CASE("binary leadingones: inner iterations per level grow like log n") {
    const std::size_t n = 256;
    std::size_t transitions = 0;
    std::size_t inner = 0;
    for (std::uint64_t seed = 0; transitions < 1000; ++seed) {
        auto e = engine_for(ProblemClass::LeadingOnes, n, seed, 2);
        Rng rng(seed);
        const Observer obs = [&](const Engine&, std::string_view event, std::span<const PointHandle>) {
            if (event == "inner") ++inner;
            if (event == "outer") ++transitions;
        };
        binary_leadingones(e, rng, obs);
    }
    const double c = static_cast<double>(inner) / static_cast<double>(transitions) / std::log2(static_cast<double>(n));
    MESSAGE("inner iterations per level / log2 n = " << c);
    CHECK(c <= 10.0);
}

TEST_CASE("rls on onemax matches the coupon-collector expectation from a random start") {
    const std::size_t n = 128;
    // 1 + sum_d P(distance = d) * n * H_d with distance ~ Bin(n, 1/2)
    double expected = 1.0;
    for (unsigned d = 1; d <= n; ++d) {
        double h = 0.0;
        for (unsigned i = 1; i <= d; ++i) h += 1.0 / i;
        const double log_p = std::lgamma(n + 1.0) - std::lgamma(d + 1.0) - std::lgamma(n - d + 1.0) - n * std::log(2.0);
        expected += std::exp(log_p) * static_cast<double>(n) * h;
    }
    std::vector<double> queries;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto e = engine_for(ProblemClass::OneMax, n, seed, 1);
        Rng rng(seed);
        const auto r = run_rls_baseline(e, rng);
        REQUIRE(r.success);
        queries.push_back(static_cast<double>(r.queries));
    }
    CHECK(mean(queries) == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("rls on leadingones grows like n^2") {
    std::vector<double> ratios;
    for (std::size_t n : {32u, 64u, 128u}) {
        std::vector<double> queries;
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            auto e = engine_for(ProblemClass::LeadingOnes, n, seed, 1);
            Rng rng(seed);
            queries.push_back(static_cast<double>(run_rls_baseline(e, rng).queries));
        }
        ratios.push_back(mean(queries) / static_cast<double>(n * n));
    }
    const double avg = mean(ratios);
    for (double r : ratios) CHECK(std::abs(r - avg) / avg <= 0.25);
}

TEST_CASE("all algorithms handle n = 1") {
    Rng rng(1);
    auto one = [&](Algorithm a, ProblemClass cls, std::size_t k) {
        const auto r = run_on_instance(a, random_instance(cls, 1, 3), k, std::nullopt, rng);
        CHECK(r.success);
        CHECK(r.queries <= 8);
    };
    one(Algorithm::BinaryOneMax, ProblemClass::OneMax, 0);
    one(Algorithm::BinaryOneMax, ProblemClass::Monotone, 0);
    one(Algorithm::StarAryOneMax, ProblemClass::OneMax, 0);
    one(Algorithm::KaryOneMax, ProblemClass::OneMax, 3);
    one(Algorithm::BinaryLeadingOnes, ProblemClass::LeadingOnes, 0);
    one(Algorithm::Rls, ProblemClass::OneMax, 0);
    one(Algorithm::Rls, ProblemClass::LeadingOnes, 0);
}

TEST_CASE("runs are reproducible bit for bit") {
    for (auto [a, cls, k] : {std::tuple{Algorithm::BinaryOneMax, ProblemClass::Monotone, std::size_t{2}},
                             std::tuple{Algorithm::KaryOneMax, ProblemClass::OneMax, std::size_t{5}},
                             std::tuple{Algorithm::BinaryLeadingOnes, ProblemClass::LeadingOnes, std::size_t{2}}}) {
        auto seq = [&] {
            auto e = engine_for(cls, 30, 77, required_arity(a, k));
            Rng rng(5);
            if (a == Algorithm::KaryOneMax) {
                kary_onemax(e, k, rng);
            } else if (a == Algorithm::BinaryOneMax) {
                binary_onemax(e, rng);
            } else {
                binary_leadingones(e, rng);
            }
            return query_sequence(e);
        };
        CHECK(seq() == seq());
    }
}

TEST_CASE("budget exhaustion is reported, not thrown") {
    Rng rng(2);
    const auto r = run_on_instance(Algorithm::BinaryOneMax, random_instance(ProblemClass::OneMax, 100, 1), 0, 10, rng);
    CHECK(r.hit_budget);
    CHECK_FALSE(r.success);
    CHECK(r.queries == 10);
}

TEST_CASE("unsupported combinations are configuration errors") {
    CHECK_THROWS_AS(validate_combination(Algorithm::BinaryLeadingOnes, ProblemClass::OneMax, 10, 0), ConfigError);
    CHECK_THROWS_AS(validate_combination(Algorithm::StarAryOneMax, ProblemClass::OneMax, 25, 0), ConfigError);
    CHECK_THROWS_AS(validate_combination(Algorithm::KaryOneMax, ProblemClass::OneMax, 10, 2), ConfigError);
    CHECK_THROWS_AS(validate_combination(Algorithm::KaryOneMax, ProblemClass::OneMax, 10, 25), ConfigError);
    CHECK_THROWS_AS(validate_combination(Algorithm::Rls, ProblemClass::Monotone, 10, 0), ConfigError);
    CHECK_NOTHROW(validate_combination(Algorithm::BinaryOneMax, ProblemClass::Monotone, 10, 0));
    for (auto a : {Algorithm::BinaryOneMax, Algorithm::StarAryOneMax, Algorithm::KaryOneMax,
                   Algorithm::BinaryLeadingOnes, Algorithm::Rls}) {
        CHECK(parse_algorithm(to_string(a)) == a);
    }
}
