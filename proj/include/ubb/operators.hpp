#pragma once

/// @file operators.hpp
/// @brief Unbiased variation operators.
///
/// Each operator is available as a seeded sampler and, for n <= 16, as its
/// exact output distribution D(. | x^1, ..., x^k). The exact form is what the
/// unbiasedness certifier inspects; the sampler is what the engine runs.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ubb/bitstring.hpp"

namespace ubb {

class Rng;

inline constexpr std::size_t kMaxExactDim = 16;

enum class OperatorKind {
    UniformSample,
    Complement,
    FlipOneWhereDifferent,
    FlipKWhereDifferent,
    RandomWhereDifferent,
    Update,
    SwitchIfDistanceOne,
    ChooseConsistent,
    ChooseConsistentSub,
    FlipOneUniform, ///< unary single-bit flip of the RLS baseline
    BiasedAllOnes,  ///< negative control: always 1...1, not unbiased
};

std::string_view operator_name(OperatorKind kind) noexcept;
std::optional<OperatorKind> parse_operator_kind(std::string_view name);

/// An operator together with its arity and integer parameters: ell for
/// flipKWhereDifferent, the observed values u^i for the chooseConsistent family.
struct OperatorId {
    OperatorKind kind;
    std::size_t arity;
    std::vector<std::int64_t> params;

    static OperatorId uniform_sample();
    static OperatorId complement();
    static OperatorId flip_one_where_different();
    static OperatorId flip_k_where_different(std::int64_t ell);
    static OperatorId random_where_different();
    static OperatorId update();
    static OperatorId switch_if_distance_one();
    /// t-ary, t = values.size().
    static OperatorId choose_consistent(std::vector<std::int64_t> values);
    /// (r+2)-ary, r = values.size(); the last two inputs are the anchors.
    static OperatorId choose_consistent_sub(std::vector<std::int64_t> values);
    static OperatorId flip_one_uniform();
    static OperatorId biased_all_ones();

    std::string_view name() const noexcept { return operator_name(kind); }
    /// Throws ContractViolation if the arity does not match the kind.
    void validate() const;

    friend bool operator==(const OperatorId&, const OperatorId&) = default;
};

/// Finite distribution over bitstrings.
class OutputDistribution {
public:
    void add(const BitString& y, double p) { support_[y] += p; }
    double probability(const BitString& y) const;
    double total() const;
    std::size_t support_size() const noexcept { return support_.size(); }
    const std::map<BitString, double>& support() const noexcept { return support_; }

    static OutputDistribution point_mass(const BitString& y);

private:
    std::map<BitString, double> support_;
};

BitString uniform_sample(std::size_t n, Rng& rng);
BitString complement_op(const BitString& x);
/// Copy of x with one uniformly chosen position of disagreement with y flipped;
/// x itself when x == y.
BitString flip_one_where_different(const BitString& x, const BitString& y, Rng& rng);
/// Copy of y with a uniform subset of min(ell, H(x, y)) disagreeing positions flipped.
BitString flip_k_where_different(std::int64_t ell, const BitString& x, const BitString& y, Rng& rng);
/// Agrees with x and y where they agree; independent fair bits elsewhere.
BitString random_where_different(const BitString& x, const BitString& y, Rng& rng);
BitString update_op(const BitString& a, const BitString& b, const BitString& c);
BitString switch_if_distance_one(const BitString& y, const BitString& y2);
BitString flip_one_uniform(const BitString& x, Rng& rng);
BitString biased_all_ones(const BitString& x);

/// Runs the operator on inputs (inputs.size() == op.arity). n is needed for
/// the 0-ary uniformSample.
BitString sample(const OperatorId& op, std::size_t n, std::span<const BitString> inputs, Rng& rng);

/// Exact output distribution; throws ExactEnumerationUnavailable for n > 16.
OutputDistribution exact_pmf(const OperatorId& op, std::size_t n, std::span<const BitString> inputs);

} // namespace ubb
