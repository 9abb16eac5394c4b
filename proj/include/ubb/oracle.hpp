#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ubb/problems.hpp"

namespace ubb {

struct QueryRecord {
    BitString point;
    Fitness value;
};

/// The only channel to a hidden instance. Every query is charged, repeated
/// points included, and recorded in an append-only history.
class Oracle {
public:
    explicit Oracle(HiddenInstance instance, std::optional<std::uint64_t> budget = std::nullopt);

    /// Throws BudgetExhausted once query_count() reached the budget.
    Fitness query(const BitString& x);

    std::uint64_t query_count() const noexcept { return history_.size(); }
    std::optional<std::uint64_t> budget() const noexcept { return budget_; }
    std::size_t dimension() const noexcept { return ubb::dimension(instance_); }
    ProblemClass problem() const noexcept { return problem_class(instance_); }
    std::span<const QueryRecord> history() const noexcept { return history_; }

    /// True if the most recent query hit a global optimum.
    bool last_query_optimal() const noexcept;

    /// Hidden data, for tests and debug output only.
    const HiddenInstance& debug_instance() const noexcept { return instance_; }

private:
    HiddenInstance instance_;
    std::optional<std::uint64_t> budget_;
    std::vector<QueryRecord> history_;
};

} // namespace ubb
