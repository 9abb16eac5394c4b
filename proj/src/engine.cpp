#include "ubb/engine.hpp"

#include <string>

#include "ubb/errors.hpp"
#include "ubb/rng.hpp"

namespace ubb {

Engine::Engine(Oracle oracle, std::size_t max_arity) : oracle_(std::move(oracle)), max_arity_(max_arity) {}

Engine::Applied Engine::apply(const OperatorId& op, std::span<const PointHandle> parents, Rng& rng) {
    if (op.arity > max_arity_) {
        throw ModelViolation(std::string(op.name()) + " has arity " + std::to_string(op.arity) +
                             " above the configured limit " + std::to_string(max_arity_));
    }
    if (parents.size() != op.arity) {
        throw ModelViolation(std::string(op.name()) + " expects " + std::to_string(op.arity) + " parents, got " +
                             std::to_string(parents.size()));
    }
    const auto history = oracle_.history();
    std::vector<BitString> inputs;
    inputs.reserve(parents.size());
    for (const auto h : parents) {
        if (h.index >= history.size()) throw ModelViolation("handle does not reference a queried point");
        inputs.push_back(history[h.index].point);
    }

    const std::uint64_t before = rng.draws();
    BitString child = sample(op, oracle_.dimension(), inputs, rng);
    const std::uint64_t used = rng.draws() - before;

    const Fitness value = oracle_.query(child);
    audit_.push_back({op, std::vector<PointHandle>(parents.begin(), parents.end()), before, used});
    return {PointHandle{oracle_.query_count() - 1}, value};
}

Fitness Engine::fitness(PointHandle h) const {
    const auto history = oracle_.history();
    if (h.index >= history.size()) throw ModelViolation("handle does not reference a queried point");
    return history[h.index].value;
}

const BitString& EngineInspector::point(PointHandle h) const {
    const auto history = engine_.oracle_.history();
    require(h.index < history.size(), "handle does not reference a queried point");
    return history[h.index].point;
}

} // namespace ubb
