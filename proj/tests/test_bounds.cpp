#include <cmath>

#include "doctest.h"

#include "support/oracles.hpp"
#include "ubb/bounds.hpp"
#include "ubb/errors.hpp"

using namespace ubb;

namespace {

/// log2 C(n, k) as a sum of logs of integers.
double log2_binomial_by_sum(std::int64_t n, std::int64_t k) {
    double s = 0.0;
    for (std::int64_t i = 1; i <= k; ++i) s += std::log2(static_cast<double>(n - k + i)) - std::log2(static_cast<double>(i));
    return s;
}

} // namespace

TEST_CASE("log2 binomial small values") {
    CHECK(log2_binomial(10, 0) == 0.0);
    CHECK(log2_binomial(4, 2) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
    CHECK_THROWS_AS(log2_binomial(4, 5), ContractViolation);
    CHECK_THROWS_AS(log2_binomial(4, -1), ContractViolation);
}

TEST_CASE("log2 binomial matches exact integers for n <= 60") {
    double worst = 0.0;
    for (unsigned n = 0; n <= 60; ++n) {
        for (unsigned k = 0; k <= n; ++k) {
            const double exact = std::log2(static_cast<double>(oracle::binomial(n, k)));
            worst = std::max(worst, std::abs(log2_binomial(n, k) - exact));
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("left-hand side computed two ways agrees for n <= 10^4") {
    for (std::int64_t n : {10, 100, 1000, 10000}) {
        const auto t = static_cast<double>(check_proposition1(static_cast<std::uint64_t>(n), {2}).t);
        for (std::int64_t d = 2; d <= n; d = (d * 3 / 4) * 2 + 2) {
            const auto r = check_proposition1(static_cast<std::uint64_t>(n), {static_cast<std::uint64_t>(d)});
            const double by_sum = log2_binomial_by_sum(n, d) + t * (log2_binomial_by_sum(d, d / 2) - static_cast<double>(d));
            CHECK(std::abs(r.points[0].lhs_log2 - by_sum) <= 1e-4);
        }
    }
}

TEST_CASE("the bound holds at n = 2^20 on the default grid") {
    const std::uint64_t n = 1u << 20;
    const auto r = check_proposition1(n, default_d_grid(n));
    CHECK(r.t == 195496);
    CHECK(r.rhs_log2 == doctest::Approx(-0.75 * 195496));
    CHECK(r.margin > 0.0);
    CHECK(r.pass);
}

TEST_CASE("the d = n point is strongly negative") {
    const auto r = check_proposition1(1024, {1024});
    CHECK(r.points[0].lhs_log2 == doctest::Approx(static_cast<double>(r.t) * (log2_binomial(1024, 512) - 1024.0)));
    CHECK(r.points[0].margin > 0.0);
}

TEST_CASE("small n is reported without assertion") {
    const auto r = check_proposition1(64, default_d_grid(64));
    CHECK(r.points.size() == default_d_grid(64).size());
    CHECK(std::isfinite(r.margin));
}

TEST_CASE("margin never decreases as t grows") {
    for (std::uint64_t n : {64u, 1000u, 65536u}) {
        const auto grid = default_d_grid(n);
        double previous = -INFINITY;
        for (std::uint64_t t = 1; t < 4000; t = t * 2 + 1) {
            const auto r = check_proposition1(n, grid, t);
            CHECK(r.margin >= previous);
            previous = r.margin;
        }
    }
}

TEST_CASE("odd d is rejected") {
    CHECK_THROWS_AS(check_proposition1(100, {2, 3}), ContractViolation);
}

TEST_CASE("default grid shape") {
    const auto g = default_d_grid(1u << 20);
    for (auto d : g) CHECK(d % 2 == 0);
    CHECK(g.front() == 2);
    CHECK(g.back() == (1u << 20));
    CHECK(std::count_if(g.begin(), g.end(), [](auto d) { return d <= 2048; }) >= 1024);
    for (auto d : default_d_grid(15)) CHECK(d <= 14);
}

TEST_CASE("reference curves") {
    CHECK(theory_curve(TheoryModel::Linear2n, 100) == 200.0);
    CHECK(theory_curve(TheoryModel::NOverLogK, 64, 16) == doctest::Approx(32.0));
    CHECK(theory_curve(TheoryModel::StarAry, 16) == doctest::Approx(8.0));
    CHECK(theory_curve(TheoryModel::NLogN, 256, std::nullopt, 2.0) == doctest::Approx(4096.0));
    CHECK_THROWS_AS(theory_curve(TheoryModel::NOverLogK, 64), ContractViolation);
    for (auto m : {TheoryModel::Linear2n, TheoryModel::NLogN, TheoryModel::NOverLogK, TheoryModel::StarAry}) {
        CHECK(parse_theory_model(to_string(m)) == m);
    }
}
