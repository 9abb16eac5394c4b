#pragma once

/// @file engine.hpp
/// @brief Unbiased black-box engine.
///
/// Algorithms hold only PointHandles and fitness values. The engine resolves
/// handles to the hidden points, runs the requested operator, charges the
/// oracle and appends an audit entry. Nothing on the public surface returns a
/// BitString; EngineInspector is the test/debug back door.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ubb/operators.hpp"
#include "ubb/oracle.hpp"

namespace ubb {

class Rng;

struct PointHandle {
    std::size_t index = 0;
    friend auto operator<=>(const PointHandle&, const PointHandle&) = default;
};

struct OperatorCall {
    OperatorId op;
    std::vector<PointHandle> parents;
    std::uint64_t rng_draws_before = 0;
    std::uint64_t rng_draws_used = 0;
};

inline constexpr std::size_t kUnboundedArity = std::numeric_limits<std::size_t>::max();

class Engine {
public:
    struct Applied {
        PointHandle handle;
        Fitness fitness;
    };

    Engine(Oracle oracle, std::size_t max_arity);

    /// Samples op on the referenced points and queries the result.
    /// Throws ModelViolation on arity or handle errors, BudgetExhausted from the oracle.
    Applied apply(const OperatorId& op, std::span<const PointHandle> parents, Rng& rng);
    Applied apply(const OperatorId& op, std::initializer_list<PointHandle> parents, Rng& rng) {
        return apply(op, std::span<const PointHandle>(parents.begin(), parents.size()), rng);
    }

    Fitness fitness(PointHandle h) const;
    std::size_t dimension() const noexcept { return oracle_.dimension(); }
    ProblemClass problem() const noexcept { return oracle_.problem(); }
    std::size_t max_arity() const noexcept { return max_arity_; }
    std::uint64_t query_count() const noexcept { return oracle_.query_count(); }
    std::span<const OperatorCall> audit() const noexcept { return audit_; }

private:
    friend class EngineInspector;

    Oracle oracle_;
    std::size_t max_arity_;
    std::vector<OperatorCall> audit_;
};

/// Read access to the hidden side of an engine, for invariant checks.
class EngineInspector {
public:
    explicit EngineInspector(const Engine& engine) : engine_(engine) {}

    const BitString& point(PointHandle h) const;
    const Oracle& oracle() const noexcept { return engine_.oracle_; }
    const HiddenInstance& instance() const noexcept { return engine_.oracle_.debug_instance(); }

private:
    const Engine& engine_;
};

} // namespace ubb
