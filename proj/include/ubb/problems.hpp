#pragma once

/// @file problems.hpp
/// @brief Hidden function classes: OneMax, LeadingOnes and positive-weight monotone functions.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ubb/bitstring.hpp"
#include "ubb/permutation.hpp"

namespace ubb {

using Fitness = double;

enum class ProblemClass { OneMax, LeadingOnes, Monotone };

std::string_view to_string(ProblemClass cls) noexcept;
/// Accepts "onemax", "leadingones", "monotone" (case-insensitive).
std::optional<ProblemClass> parse_problem_class(std::string_view name);

/// om_z(x) = number of positions where x agrees with z.
struct OneMaxInstance {
    BitString z;
};

/// Length of the longest sigma-ordered prefix on which x agrees with z:
/// lo(x) = max{i : x_{sigma(j)} = z_{sigma(j)} for all j < i}.
struct LeadingOnesInstance {
    BitString z;
    Permutation sigma;
};

/// f(x) = sum of weights over positions where x agrees with z. Weights are
/// strictly positive, so a strict superset of agreeing positions gives a
/// strictly larger value.
struct MonotoneInstance {
    BitString z;
    std::vector<double> weights;
};

using HiddenInstance = std::variant<OneMaxInstance, LeadingOnesInstance, MonotoneInstance>;

Fitness evaluate_onemax(const OneMaxInstance& inst, const BitString& x);
Fitness evaluate_leadingones(const LeadingOnesInstance& inst, const BitString& x);
Fitness evaluate_monotone(const MonotoneInstance& inst, const BitString& x);

Fitness evaluate(const HiddenInstance& inst, const BitString& x);
ProblemClass problem_class(const HiddenInstance& inst) noexcept;
std::size_t dimension(const HiddenInstance& inst) noexcept;
const BitString& optimum(const HiddenInstance& inst) noexcept;
Fitness optimal_value(const HiddenInstance& inst);

/// z uniform over {0,1}^n; sigma uniform over S_n for LeadingOnes; monotone
/// weights i.i.d. uniform on the 2^-32 grid of (0, 1]. Deterministic in seed.
HiddenInstance random_instance(ProblemClass cls, std::size_t n, std::uint64_t seed);

/// Public description of an instance; hidden data lives elsewhere.
struct InstanceDescriptor {
    ProblemClass cls;
    std::size_t n;
    std::uint64_t seed;
};

/// One-line dump of the hidden data (z, sigma, weights) for debug output.
std::string describe_hidden(const HiddenInstance& inst);

} // namespace ubb
