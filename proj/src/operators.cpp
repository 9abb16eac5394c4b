#include "ubb/operators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ubb/consistency.hpp"
#include "ubb/errors.hpp"
#include "ubb/rng.hpp"

namespace ubb {

namespace {

constexpr std::array kNames{
    std::pair{OperatorKind::UniformSample, std::string_view{"uniformSample"}},
    std::pair{OperatorKind::Complement, std::string_view{"complement"}},
    std::pair{OperatorKind::FlipOneWhereDifferent, std::string_view{"flipOneWhereDifferent"}},
    std::pair{OperatorKind::FlipKWhereDifferent, std::string_view{"flipKWhereDifferent"}},
    std::pair{OperatorKind::RandomWhereDifferent, std::string_view{"randomWhereDifferent"}},
    std::pair{OperatorKind::Update, std::string_view{"update"}},
    std::pair{OperatorKind::SwitchIfDistanceOne, std::string_view{"switchIfDistanceOne"}},
    std::pair{OperatorKind::ChooseConsistent, std::string_view{"chooseConsistent"}},
    std::pair{OperatorKind::ChooseConsistentSub, std::string_view{"chooseConsistentSub"}},
    std::pair{OperatorKind::FlipOneUniform, std::string_view{"flipOneUniform"}},
    std::pair{OperatorKind::BiasedAllOnes, std::string_view{"biasedAllOnes"}},
};

void require_same_length(const BitString& x, const BitString& y) {
    require(x.size() == y.size(), "operator inputs have different lengths");
}

std::vector<BlockObservation> sub_history(const OperatorId& op, std::span<const BitString> inputs) {
    std::vector<BlockObservation> history;
    const std::size_t r = inputs.size() - 2;
    history.reserve(r);
    for (std::size_t i = 0; i < r; ++i) history.push_back({inputs[i], op.params[i]});
    return history;
}

ConsistencyQuery full_query(const OperatorId& op, std::size_t n, std::span<const BitString> inputs) {
    ConsistencyQuery q;
    q.dim = n;
    q.points.assign(inputs.begin(), inputs.end());
    q.values = op.params;
    return q;
}

void check_inputs(const OperatorId& op, std::size_t n, std::span<const BitString> inputs) {
    op.validate();
    require(n >= 1, "operator dimension must be positive");
    require(inputs.size() == op.arity, "operator received the wrong number of inputs");
    for (const auto& x : inputs) require(x.size() == n, "operator input has wrong length");
}

OutputDistribution uniform_over(const std::vector<BitString>& points) {
    OutputDistribution d;
    const double p = 1.0 / static_cast<double>(points.size());
    for (const auto& y : points) d.add(y, p);
    return d;
}

OutputDistribution uniform_over_cube(std::size_t n) {
    OutputDistribution d;
    const std::uint64_t total = std::uint64_t{1} << n;
    const double p = std::ldexp(1.0, -static_cast<int>(n));
    for (std::uint64_t code = 0; code < total; ++code) d.add(BitString::from_code(code, n), p);
    return d;
}

/// Every way of flipping exactly `m` of `positions` in base (or any number when m < 0).
OutputDistribution flips_of(const BitString& base, const std::vector<std::size_t>& positions, int m) {
    const std::size_t d = positions.size();
    std::vector<BitString> outs;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << d); ++subset) {
        if (m >= 0 && std::popcount(subset) != m) continue;
        BitString y = base;
        for (std::size_t j = 0; j < d; ++j) {
            if ((subset >> j) & 1U) y.flip(positions[j]);
        }
        outs.push_back(std::move(y));
    }
    return uniform_over(outs);
}

} // namespace

std::string_view operator_name(OperatorKind kind) noexcept {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view name) {
    for (const auto& [k, n] : kNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

OperatorId OperatorId::uniform_sample() { return {OperatorKind::UniformSample, 0, {}}; }
OperatorId OperatorId::complement() { return {OperatorKind::Complement, 1, {}}; }
OperatorId OperatorId::flip_one_where_different() { return {OperatorKind::FlipOneWhereDifferent, 2, {}}; }
OperatorId OperatorId::flip_k_where_different(std::int64_t ell) {
    require(ell >= 0, "flipKWhereDifferent needs ell >= 0");
    return {OperatorKind::FlipKWhereDifferent, 2, {ell}};
}
OperatorId OperatorId::random_where_different() { return {OperatorKind::RandomWhereDifferent, 2, {}}; }
OperatorId OperatorId::update() { return {OperatorKind::Update, 3, {}}; }
OperatorId OperatorId::switch_if_distance_one() { return {OperatorKind::SwitchIfDistanceOne, 2, {}}; }
OperatorId OperatorId::choose_consistent(std::vector<std::int64_t> values) {
    const std::size_t t = values.size();
    return {OperatorKind::ChooseConsistent, t, std::move(values)};
}
OperatorId OperatorId::choose_consistent_sub(std::vector<std::int64_t> values) {
    const std::size_t r = values.size();
    return {OperatorKind::ChooseConsistentSub, r + 2, std::move(values)};
}
OperatorId OperatorId::flip_one_uniform() { return {OperatorKind::FlipOneUniform, 1, {}}; }
OperatorId OperatorId::biased_all_ones() { return {OperatorKind::BiasedAllOnes, 1, {}}; }

void OperatorId::validate() const {
    std::size_t expected = 0;
    switch (kind) {
    case OperatorKind::UniformSample: expected = 0; break;
    case OperatorKind::Complement:
    case OperatorKind::FlipOneUniform:
    case OperatorKind::BiasedAllOnes: expected = 1; break;
    case OperatorKind::FlipOneWhereDifferent:
    case OperatorKind::RandomWhereDifferent:
    case OperatorKind::SwitchIfDistanceOne: expected = 2; break;
    case OperatorKind::FlipKWhereDifferent:
        require(params.size() == 1 && params[0] >= 0, "flipKWhereDifferent needs one non-negative parameter");
        expected = 2;
        break;
    case OperatorKind::Update: expected = 3; break;
    case OperatorKind::ChooseConsistent: expected = params.size(); break;
    case OperatorKind::ChooseConsistentSub: expected = params.size() + 2; break;
    }
    require(arity == expected, "operator arity does not match its definition");
}

double OutputDistribution::probability(const BitString& y) const {
    const auto it = support_.find(y);
    return it == support_.end() ? 0.0 : it->second;
}

double OutputDistribution::total() const {
    double sum = 0.0;
    for (const auto& [y, p] : support_) sum += p;
    return sum;
}

OutputDistribution OutputDistribution::point_mass(const BitString& y) {
    OutputDistribution d;
    d.add(y, 1.0);
    return d;
}

BitString uniform_sample(std::size_t n, Rng& rng) {
    require(n >= 1, "uniformSample needs n >= 1");
    return BitString::random(n, rng);
}

BitString complement_op(const BitString& x) { return x.complement(); }

BitString flip_one_where_different(const BitString& x, const BitString& y, Rng& rng) {
    require_same_length(x, y);
    const auto diff = differing_positions(x, y);
    BitString out = x;
    if (!diff.empty()) out.flip(diff[rng.below(diff.size())]);
    return out;
}

BitString flip_k_where_different(std::int64_t ell, const BitString& x, const BitString& y, Rng& rng) {
    require_same_length(x, y);
    require(ell >= 0, "flipKWhereDifferent needs ell >= 0");
    auto diff = differing_positions(x, y);
    const std::size_t m = std::min(static_cast<std::size_t>(ell), diff.size());
    BitString out = y;
    for (std::size_t i = 0; i < m; ++i) {
        std::swap(diff[i], diff[i + rng.below(diff.size() - i)]);
        out.flip(diff[i]);
    }
    return out;
}

BitString random_where_different(const BitString& x, const BitString& y, Rng& rng) {
    require_same_length(x, y);
    return x ^ (BitString::random(x.size(), rng) & (x ^ y));
}

BitString update_op(const BitString& a, const BitString& b, const BitString& c) { return update_bits(a, b, c); }

BitString switch_if_distance_one(const BitString& y, const BitString& y2) {
    return hamming_distance(y, y2) == 1 ? y2 : y;
}

BitString flip_one_uniform(const BitString& x, Rng& rng) {
    BitString out = x;
    out.flip(rng.below(x.size()));
    return out;
}

BitString biased_all_ones(const BitString& x) { return BitString::ones(x.size()); }

BitString sample(const OperatorId& op, std::size_t n, std::span<const BitString> in, Rng& rng) {
    check_inputs(op, n, in);
    switch (op.kind) {
    case OperatorKind::UniformSample: return uniform_sample(n, rng);
    case OperatorKind::Complement: return complement_op(in[0]);
    case OperatorKind::FlipOneWhereDifferent: return flip_one_where_different(in[0], in[1], rng);
    case OperatorKind::FlipKWhereDifferent: return flip_k_where_different(op.params[0], in[0], in[1], rng);
    case OperatorKind::RandomWhereDifferent: return random_where_different(in[0], in[1], rng);
    case OperatorKind::Update: return update_op(in[0], in[1], in[2]);
    case OperatorKind::SwitchIfDistanceOne: return switch_if_distance_one(in[0], in[1]);
    case OperatorKind::ChooseConsistent: return choose_consistent(full_query(op, n, in), rng);
    case OperatorKind::ChooseConsistentSub: {
        const auto history = sub_history(op, in);
        const auto& anchor_complement = in[in.size() - 2];
        const auto& anchor = in[in.size() - 1];
        const auto block = validated_block(history, anchor_complement, anchor);
        return choose_consistent_sub(block, history, anchor_complement, anchor, rng);
    }
    case OperatorKind::FlipOneUniform: return flip_one_uniform(in[0], rng);
    case OperatorKind::BiasedAllOnes: return biased_all_ones(in[0]);
    }
    throw ContractViolation("unknown operator");
}

OutputDistribution exact_pmf(const OperatorId& op, std::size_t n, std::span<const BitString> in) {
    if (n > kMaxExactDim) {
        throw ExactEnumerationUnavailable("exact operator distributions need n <= " + std::to_string(kMaxExactDim) +
                                          ", got " + std::to_string(n));
    }
    check_inputs(op, n, in);
    switch (op.kind) {
    case OperatorKind::UniformSample: return uniform_over_cube(n);
    case OperatorKind::Complement: return OutputDistribution::point_mass(complement_op(in[0]));
    case OperatorKind::FlipOneWhereDifferent: {
        const auto diff = differing_positions(in[0], in[1]);
        if (diff.empty()) return OutputDistribution::point_mass(in[0]);
        return flips_of(in[0], diff, 1);
    }
    case OperatorKind::FlipKWhereDifferent: {
        const auto diff = differing_positions(in[0], in[1]);
        const auto m = std::min<std::size_t>(static_cast<std::size_t>(op.params[0]), diff.size());
        return flips_of(in[1], diff, static_cast<int>(m));
    }
    case OperatorKind::RandomWhereDifferent: return flips_of(in[0], differing_positions(in[0], in[1]), -1);
    case OperatorKind::Update: return OutputDistribution::point_mass(update_op(in[0], in[1], in[2]));
    case OperatorKind::SwitchIfDistanceOne: return OutputDistribution::point_mass(switch_if_distance_one(in[0], in[1]));
    case OperatorKind::ChooseConsistent: {
        const auto set = consistent_set(full_query(op, n, in));
        return set.empty() ? uniform_over_cube(n) : uniform_over(set);
    }
    case OperatorKind::ChooseConsistentSub: {
        const auto history = sub_history(op, in);
        const auto& anchor = in[in.size() - 1];
        const auto block = validated_block(history, in[in.size() - 2], anchor);
        ConsistencyQuery q;
        q.dim = block.size();
        for (const auto& obs : history) {
            q.points.push_back(restrict_to_block(obs.point, block));
            q.values.push_back(obs.value);
        }
        auto set = consistent_set(q);
        if (set.empty()) {
            for (std::uint64_t code = 0; code < (std::uint64_t{1} << q.dim); ++code) {
                set.push_back(BitString::from_code(code, q.dim));
            }
        }
        std::vector<BitString> outs;
        outs.reserve(set.size());
        for (const auto& choice : set) {
            BitString y = anchor;
            for (std::size_t j = 0; j < block.size(); ++j) y.set(block[j], choice[j]);
            outs.push_back(std::move(y));
        }
        return uniform_over(outs);
    }
    case OperatorKind::FlipOneUniform: {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return flips_of(in[0], all, 1);
    }
    case OperatorKind::BiasedAllOnes: return OutputDistribution::point_mass(biased_all_ones(in[0]));
    }
    throw ContractViolation("unknown operator");
}

} // namespace ubb
