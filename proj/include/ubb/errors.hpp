#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ubb {

/// A precondition of an operation was violated (length mismatch, bad index, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The oracle refused a query because its budget is spent.
class BudgetExhausted : public std::runtime_error {
public:
    explicit BudgetExhausted(std::uint64_t queries)
        : std::runtime_error("query budget exhausted after " + std::to_string(queries) + " queries"),
          queries_(queries) {}

    std::uint64_t query_count() const noexcept { return queries_; }

private:
    std::uint64_t queries_;
};

/// An algorithm tried to step outside the unbiased black-box model
/// (operator arity above the configured limit, dangling handle, ...).
class ModelViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exact enumeration was requested for a dimension beyond the supported bound.
class ExactEnumerationUnavailable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid experiment configuration, detected before any run starts.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A file could not be read or written. The message names the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const char* message) {
    if (!condition) throw ContractViolation(message);
}

} // namespace ubb
