#include "ubb/consistency.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ubb/errors.hpp"
#include "ubb/rng.hpp"

namespace ubb {

namespace {

struct CompiledQuery {
    std::size_t dim;
    std::vector<std::uint32_t> codes;
    std::vector<int> values;
    bool infeasible = false;
};

CompiledQuery compile(const ConsistencyQuery& q) {
    if (q.dim > kMaxConsistencyDim) {
        throw ExactEnumerationUnavailable("consistency enumeration supports dim <= " +
                                          std::to_string(kMaxConsistencyDim) + ", got " + std::to_string(q.dim));
    }
    require(q.dim >= 1, "consistency query dimension must be positive");
    require(q.points.size() == q.values.size(), "consistency query needs one value per point");
    CompiledQuery c{q.dim, {}, {}};
    c.codes.reserve(q.points.size());
    c.values.reserve(q.values.size());
    for (std::size_t i = 0; i < q.points.size(); ++i) {
        require(q.points[i].size() == q.dim, "consistency query point has wrong length");
        const auto u = q.values[i];
        if (u < 0 || u > static_cast<std::int64_t>(q.dim)) c.infeasible = true;
        c.codes.push_back(static_cast<std::uint32_t>(q.points[i].code()));
        c.values.push_back(static_cast<int>(u));
    }
    return c;
}

bool matches(const CompiledQuery& c, std::uint32_t candidate) {
    const int dim = static_cast<int>(c.dim);
    for (std::size_t i = 0; i < c.codes.size(); ++i) {
        if (dim - std::popcount(candidate ^ c.codes[i]) != c.values[i]) return false;
    }
    return true;
}

template <class Fn>
void for_each_consistent(const CompiledQuery& c, Fn&& fn) {
    if (c.infeasible) return;
    const std::uint64_t total = std::uint64_t{1} << c.dim;
    for (std::uint64_t code = 0; code < total; ++code) {
        const auto candidate = static_cast<std::uint32_t>(code);
        if (matches(c, candidate) && !fn(candidate)) return;
    }
}

std::uint64_t count(const CompiledQuery& c) {
    std::uint64_t n = 0;
    for_each_consistent(c, [&](std::uint32_t) {
        ++n;
        return true;
    });
    return n;
}

std::uint32_t draw(const CompiledQuery& c, Rng& rng) {
    const std::uint64_t size = count(c);
    if (size == 0) return static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << c.dim));
    std::uint64_t target = rng.below(size);
    std::uint32_t chosen = 0;
    for_each_consistent(c, [&](std::uint32_t candidate) {
        if (target == 0) {
            chosen = candidate;
            return false;
        }
        --target;
        return true;
    });
    return chosen;
}

} // namespace

std::vector<BitString> consistent_set(const ConsistencyQuery& q) {
    const CompiledQuery c = compile(q);
    std::vector<BitString> out;
    for_each_consistent(c, [&](std::uint32_t candidate) {
        out.push_back(BitString::from_code(candidate, c.dim));
        return true;
    });
    return out;
}

std::uint64_t count_consistent(const ConsistencyQuery& q) { return count(compile(q)); }

BitString choose_consistent(const ConsistencyQuery& q, Rng& rng) {
    const CompiledQuery c = compile(q);
    return BitString::from_code(draw(c, rng), c.dim);
}

BitString restrict_to_block(const BitString& x, std::span<const std::size_t> block) {
    BitString out(block.size());
    for (std::size_t j = 0; j < block.size(); ++j) {
        if (x.at(block[j])) out.set(j, true);
    }
    return out;
}

std::vector<std::size_t> validated_block(std::span<const BlockObservation> history, const BitString& anchor_complement,
                                         const BitString& anchor) {
    require(anchor.size() == anchor_complement.size(), "anchor lengths differ");
    const BitString diff = anchor ^ anchor_complement;
    const BitString outside = diff.complement();
    for (const auto& obs : history) {
        require(obs.point.size() == anchor.size(), "history point length does not match anchors");
        const BitString off = (obs.point ^ anchor);
        for (std::size_t w = 0; w < off.words().size(); ++w) {
            require((off.words()[w] & outside.words()[w]) == 0, "history point differs from anchors outside the block");
        }
    }
    return diff.ones_positions();
}

BitString choose_consistent_sub(std::span<const std::size_t> block, std::span<const BlockObservation> history,
                                const BitString& anchor_complement, const BitString& anchor, Rng& rng) {
    const auto expected = validated_block(history, anchor_complement, anchor);
    std::vector<std::size_t> sorted(block.begin(), block.end());
    std::sort(sorted.begin(), sorted.end());
    require(sorted == expected, "block must be exactly the positions where the anchors differ");
    require(!block.empty(), "block must be non-empty");

    ConsistencyQuery q;
    q.dim = block.size();
    for (const auto& obs : history) {
        q.points.push_back(restrict_to_block(obs.point, block));
        q.values.push_back(obs.value);
    }
    const BitString choice = choose_consistent(q, rng);
    BitString out = anchor;
    for (std::size_t j = 0; j < block.size(); ++j) out.set(block[j], choice[j]);
    return out;
}

} // namespace ubb
