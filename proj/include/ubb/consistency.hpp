#pragma once

/// @file consistency.hpp
/// @brief Uniform sampling of OneMax hypotheses consistent with observed values.
///
/// A hypothesis z is consistent with (x^i, u^i) when z agrees with x^i in
/// exactly u^i positions. The sampler enumerates {0,1}^dim in lexicographic
/// order and picks the j-th consistent string for a uniform index j, so the
/// draw is exactly uniform.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ubb/bitstring.hpp"

namespace ubb {

class Rng;

inline constexpr std::size_t kMaxConsistencyDim = 24;

struct ConsistencyQuery {
    std::vector<BitString> points;
    std::vector<std::int64_t> values;
    std::size_t dim = 0;
};

/// All z in {0,1}^dim with agreement(z, points[i]) == values[i] for every i,
/// in lexicographic order.
std::vector<BitString> consistent_set(const ConsistencyQuery& q);
std::uint64_t count_consistent(const ConsistencyQuery& q);

/// Uniform over consistent_set(q); uniform over {0,1}^dim when that set is empty.
BitString choose_consistent(const ConsistencyQuery& q, Rng& rng);

struct BlockObservation {
    BitString point;
    /// Agreement count with the hidden optimum on the block positions only.
    std::int64_t value;
};

/// Projection of x onto the given positions, in the given order.
BitString restrict_to_block(const BitString& x, std::span<const std::size_t> block);

/// Samples the block positions uniformly from the block-level consistent set
/// (uniform fallback when empty) and copies every other position from the
/// anchors. The anchors must differ exactly on the block and each history
/// point must agree with them outside it.
BitString choose_consistent_sub(std::span<const std::size_t> block, std::span<const BlockObservation> history,
                                const BitString& anchor_complement, const BitString& anchor, Rng& rng);

/// Positions where the two anchors differ, after validating the preconditions
/// of choose_consistent_sub.
std::vector<std::size_t> validated_block(std::span<const BlockObservation> history, const BitString& anchor_complement,
                                         const BitString& anchor);

} // namespace ubb
