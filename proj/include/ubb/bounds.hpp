#pragma once

/// @file bounds.hpp
/// @brief Log-space evaluation of the sampling bound behind the *-ary
/// algorithm, and reference curves for reports. Logs are base 2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace ubb {

/// log2 C(n, k) via lgamma. Throws ContractViolation unless 0 <= k <= n.
double log2_binomial(std::int64_t n, std::int64_t k);

struct BoundPoint {
    std::uint64_t d = 0;
    double lhs_log2 = 0.0;
    /// rhs_log2 - lhs_log2
    double margin = 0.0;
};

struct BoundCheckResult {
    std::uint64_t n = 0;
    std::uint64_t t = 0;
    double rhs_log2 = 0.0;
    std::vector<BoundPoint> points;
    /// Smallest margin over the grid; +inf for an empty grid.
    double margin = 0.0;
    std::uint64_t worst_d = 0;
    bool pass = true;
};

/// For each even d in the grid compares
///   log2 C(n,d) + t * (log2 C(d,d/2) - d)
/// against -3t/4. t defaults to the *-ary round size for n.
BoundCheckResult check_proposition1(std::uint64_t n, const std::vector<std::uint64_t>& d_grid,
                                    std::optional<std::uint64_t> t = std::nullopt);

/// Every even d <= min(2048, n) plus 64 geometrically spaced even values up to n.
std::vector<std::uint64_t> default_d_grid(std::uint64_t n);

enum class TheoryModel { Linear2n, NLogN, NOverLogK, StarAry };

std::string_view to_string(TheoryModel m) noexcept;
std::optional<TheoryModel> parse_theory_model(std::string_view name);

/// 2n, c n log n, 2n / log k, 2n / log n.
double theory_curve(TheoryModel model, std::uint64_t n, std::optional<std::uint64_t> k = std::nullopt,
                    double c = 1.0);

} // namespace ubb
