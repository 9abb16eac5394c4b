#include "ubb/oracle.hpp"

#include "ubb/errors.hpp"

namespace ubb {

Oracle::Oracle(HiddenInstance instance, std::optional<std::uint64_t> budget)
    : instance_(std::move(instance)), budget_(budget) {
    require(!budget_ || *budget_ > 0, "oracle budget must be positive");
}

Fitness Oracle::query(const BitString& x) {
    if (budget_ && history_.size() >= *budget_) throw BudgetExhausted(history_.size());
    const Fitness value = evaluate(instance_, x);
    history_.push_back({x, value});
    return value;
}

bool Oracle::last_query_optimal() const noexcept {
    return !history_.empty() && history_.back().point == optimum(instance_);
}

} // namespace ubb
