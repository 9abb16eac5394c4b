#include "ubb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ubb/algorithms.hpp"
#include "ubb/errors.hpp"

namespace ubb {

double log2_binomial(std::int64_t n, std::int64_t k) {
    require(n >= 0 && k >= 0 && k <= n, "log2_binomial needs 0 <= k <= n");
    if (k == 0 || k == n) return 0.0;
    const double ln = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0);
    return ln / std::log(2.0);
}

BoundCheckResult check_proposition1(std::uint64_t n, const std::vector<std::uint64_t>& d_grid,
                                    std::optional<std::uint64_t> t) {
    require(n >= 2, "check_proposition1 needs n >= 2");
    BoundCheckResult result;
    result.n = n;
    result.t = t.value_or(star_ary_round_size(static_cast<std::size_t>(n)));
    const double td = static_cast<double>(result.t);
    result.rhs_log2 = -0.75 * td;
    result.margin = std::numeric_limits<double>::infinity();
    result.points.reserve(d_grid.size());
    const auto nn = static_cast<std::int64_t>(n);
    for (std::uint64_t d : d_grid) {
        require(d % 2 == 0, "d grid must contain even values only");
        require(d >= 2 && d <= n, "d grid values must lie in [2, n]");
        const auto dd = static_cast<std::int64_t>(d);
        const double per_sample = log2_binomial(dd, dd / 2) - static_cast<double>(d);
        BoundPoint p;
        p.d = d;
        p.lhs_log2 = log2_binomial(nn, dd) + td * per_sample;
        p.margin = result.rhs_log2 - p.lhs_log2;
        if (p.margin < result.margin) {
            result.margin = p.margin;
            result.worst_d = d;
        }
        result.points.push_back(p);
    }
    result.pass = result.margin >= 0.0;
    return result;
}

std::vector<std::uint64_t> default_d_grid(std::uint64_t n) {
    std::vector<std::uint64_t> grid;
    for (std::uint64_t d = 2; d <= std::min<std::uint64_t>(2048, n); d += 2) grid.push_back(d);
    if (n >= 2) {
        const double lo = std::log(2.0);
        const double hi = std::log(static_cast<double>(n));
        for (int i = 0; i < 64; ++i) {
            const double x = std::exp(lo + (hi - lo) * i / 63.0);
            auto d = static_cast<std::uint64_t>(std::llround(x));
            d -= d % 2;
            d = std::clamp<std::uint64_t>(d, 2, n - n % 2);
            grid.push_back(d);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::string_view to_string(TheoryModel m) noexcept {
    switch (m) {
    case TheoryModel::Linear2n: return "linear_2n";
    case TheoryModel::NLogN: return "nlogn";
    case TheoryModel::NOverLogK: return "n_over_logk";
    case TheoryModel::StarAry: return "star_ary";
    }
    return "?";
}

std::optional<TheoryModel> parse_theory_model(std::string_view name) {
    for (auto m : {TheoryModel::Linear2n, TheoryModel::NLogN, TheoryModel::NOverLogK, TheoryModel::StarAry}) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

double theory_curve(TheoryModel model, std::uint64_t n, std::optional<std::uint64_t> k, double c) {
    require(n >= 1, "theory_curve needs n >= 1");
    const double nd = static_cast<double>(n);
    switch (model) {
    case TheoryModel::Linear2n: return 2.0 * nd;
    case TheoryModel::NLogN: return c * nd * std::log2(nd);
    case TheoryModel::NOverLogK:
        require(k.has_value(), "n_over_logk needs k");
        require(*k >= 2, "n_over_logk needs k >= 2");
        return 2.0 * nd / std::log2(static_cast<double>(*k));
    case TheoryModel::StarAry:
        require(n >= 2, "star_ary needs n >= 2");
        return 2.0 * nd / std::log2(nd);
    }
    throw ContractViolation("unknown theory model");
}

} // namespace ubb
