#pragma once

/// @file algorithms.hpp
/// @brief Unbiased black-box algorithms for OneMax, monotone functions and LeadingOnes.
///
/// Every algorithm talks to the problem only through an Engine, so it sees
/// fitness values and handles but never a search point. Logarithms are base 2.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ubb/engine.hpp"
#include "ubb/problems.hpp"

namespace ubb {

class Rng;

enum class Algorithm { BinaryOneMax, StarAryOneMax, KaryOneMax, BinaryLeadingOnes, Rls };

std::string_view to_string(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Hook for invariant checks. Receives the engine, an event tag and the
/// handles that make up the algorithm state at that point:
///   binary_onemax   "iteration" {x, y}
///   star_ary        "round"     {w}
///   kary_onemax     "block"     {x, y}   after each merged block
///   optimize_subset "subset"    {anchor_complement, anchor, w}
///   binary_lo       "inner"     {x, y, y'}, "outer" {x, y}
using Observer = std::function<void(const Engine&, std::string_view, std::span<const PointHandle>)>;

struct RunRecord {
    Algorithm algorithm = Algorithm::BinaryOneMax;
    ProblemClass cls = ProblemClass::OneMax;
    std::size_t n = 0;
    /// Configured arity; 0 stands for unrestricted.
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::uint64_t queries = 0;
    bool success = false;
    bool hit_budget = false;
};

/// Samples per round of the *-ary algorithm:
/// ceil((1 + 4 log log n / log n) * 2n / log n), with log n clamped to >= 1,
/// log log n clamped to >= 0 and the result to >= 1.
std::uint64_t star_ary_round_size(std::size_t n);
/// Samples per round of optimize_subset on a block of size ell:
/// min(ell - 2, star_ary_round_size(ell)); non-positive for ell <= 2.
std::int64_t subset_round_size(std::size_t ell);
/// 100 * n * ceil(log2(n + 1)).
std::uint64_t default_budget(std::size_t n);
/// Arity an algorithm needs: 2, unrestricted, k, 2, 1.
std::size_t required_arity(Algorithm a, std::size_t k);

// Core procedures. Each returns the handle of its output point and lets
// BudgetExhausted propagate.

PointHandle binary_onemax(Engine& e, Rng& rng, const Observer& observe = {});
PointHandle star_ary_onemax(Engine& e, Rng& rng, const Observer& observe = {});
PointHandle kary_onemax(Engine& e, std::size_t k, Rng& rng, const Observer& observe = {});
/// Optimizes the block where anchor_complement and anchor differ; every other
/// position keeps the anchors' value. Returns the handle of w.sigma.
PointHandle optimize_subset(Engine& e, std::size_t ell, PointHandle anchor_complement, PointHandle anchor, Rng& rng,
                            const Observer& observe = {});
PointHandle binary_leadingones(Engine& e, Rng& rng, const Observer& observe = {});
PointHandle rls(Engine& e, Rng& rng, const Observer& observe = {});

// Runners: wrap a core procedure and report the outcome. success means the
// procedure terminated and its output point is the optimum.

RunRecord run_binary_onemax(Engine& e, Rng& rng, const Observer& observe = {});
RunRecord run_star_ary_onemax(Engine& e, Rng& rng, const Observer& observe = {});
RunRecord run_kary_onemax(Engine& e, std::size_t k, Rng& rng, const Observer& observe = {});
RunRecord run_binary_leadingones(Engine& e, Rng& rng, const Observer& observe = {});
RunRecord run_rls_baseline(Engine& e, Rng& rng, const Observer& observe = {});

/// Checks that the algorithm supports the class and k; throws ConfigError.
void validate_combination(Algorithm a, ProblemClass cls, std::size_t n, std::size_t k);

/// Fresh oracle and engine on the instance, then the matching runner.
/// budget == nullopt means default_budget(n).
RunRecord run_on_instance(Algorithm a, const HiddenInstance& instance, std::size_t k,
                          std::optional<std::uint64_t> budget, Rng& rng, const Observer& observe = {});

} // namespace ubb
