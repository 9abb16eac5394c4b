#include "ubb/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ubb/consistency.hpp"
#include "ubb/errors.hpp"
#include "ubb/rng.hpp"

namespace ubb {

namespace {

void notify(const Observer& observe, const Engine& e, std::string_view event,
            std::initializer_list<PointHandle> handles) {
    if (observe) observe(e, event, std::span<const PointHandle>(handles.begin(), handles.size()));
}

std::int64_t as_count(Fitness f) { return static_cast<std::int64_t>(std::llround(f)); }

double n_as_fitness(const Engine& e) { return static_cast<double>(e.dimension()); }

template <class Procedure>
RunRecord run_guarded(Algorithm a, Engine& e, std::size_t k, Procedure&& procedure) {
    RunRecord record;
    record.algorithm = a;
    record.cls = e.problem();
    record.n = e.dimension();
    record.k = k;
    try {
        const PointHandle out = procedure();
        const EngineInspector inspect(e);
        record.success = inspect.point(out) == optimum(inspect.instance());
    } catch (const BudgetExhausted&) {
        record.hit_budget = true;
    }
    record.queries = e.query_count();
    return record;
}

std::size_t reported_arity(const Engine& e) { return e.max_arity() == kUnboundedArity ? 0 : e.max_arity(); }

/// The binary procedure: a and b disagree on `distance` positions, and at each
/// of them exactly one is right. Stops after `distance` accepted flips (a == b).
PointHandle binary_merge(Engine& e, PointHandle a, PointHandle b, std::size_t distance, Rng& rng) {
    const auto flip = OperatorId::flip_one_where_different();
    std::size_t accepted = 0;
    while (accepted < distance) {
        if (rng.coin()) {
            const auto next = e.apply(flip, {a, b}, rng);
            if (next.fitness > e.fitness(a)) {
                a = next.handle;
                ++accepted;
            }
        } else {
            const auto next = e.apply(flip, {b, a}, rng);
            if (next.fitness > e.fitness(b)) {
                b = next.handle;
                ++accepted;
            }
        }
    }
    return a;
}

} // namespace

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::BinaryOneMax: return "binary_onemax";
    case Algorithm::StarAryOneMax: return "star_ary_onemax";
    case Algorithm::KaryOneMax: return "kary_onemax";
    case Algorithm::BinaryLeadingOnes: return "binary_leadingones";
    case Algorithm::Rls: return "rls";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::BinaryOneMax, Algorithm::StarAryOneMax, Algorithm::KaryOneMax,
                   Algorithm::BinaryLeadingOnes, Algorithm::Rls}) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

std::uint64_t star_ary_round_size(std::size_t n) {
    require(n >= 1, "round size needs n >= 1");
    const double lg = std::max(1.0, std::log2(static_cast<double>(n)));
    const double lglg = std::max(0.0, std::log2(lg));
    const double t = (1.0 + 4.0 * lglg / lg) * 2.0 * static_cast<double>(n) / lg;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(t - 1e-9)));
}

std::int64_t subset_round_size(std::size_t ell) {
    if (ell <= 2) return static_cast<std::int64_t>(ell) - 2;
    return std::min<std::int64_t>(static_cast<std::int64_t>(ell) - 2,
                                  static_cast<std::int64_t>(star_ary_round_size(ell)));
}

std::uint64_t default_budget(std::size_t n) {
    const auto lg = static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(n) + 1.0)));
    return 100 * static_cast<std::uint64_t>(n) * lg;
}

std::size_t required_arity(Algorithm a, std::size_t k) {
    switch (a) {
    case Algorithm::BinaryOneMax:
    case Algorithm::BinaryLeadingOnes: return 2;
    case Algorithm::StarAryOneMax: return kUnboundedArity;
    case Algorithm::KaryOneMax: return k;
    case Algorithm::Rls: return 1;
    }
    return 0;
}

PointHandle binary_onemax(Engine& e, Rng& rng, const Observer& observe) {
    const std::size_t n = e.dimension();
    PointHandle x = e.apply(OperatorId::uniform_sample(), {}, rng).handle;
    PointHandle y = e.apply(OperatorId::complement(), {x}, rng).handle;
    const auto flip = OperatorId::flip_one_where_different();

    // OneMax stops at f(x) = n. For a general monotone function the optimum
    // value is unknown, so stop once x and y agree everywhere, i.e. after n
    // accepted flips.
    const bool onemax = e.problem() == ProblemClass::OneMax;
    std::size_t accepted = 0;
    auto done = [&] { return onemax ? e.fitness(x) == n_as_fitness(e) : accepted == n; };
    do {
        notify(observe, e, "iteration", {x, y});
        if (rng.coin()) {
            const auto next = e.apply(flip, {x, y}, rng);
            if (next.fitness > e.fitness(x)) {
                x = next.handle;
                ++accepted;
            }
        } else {
            const auto next = e.apply(flip, {y, x}, rng);
            if (next.fitness > e.fitness(y)) {
                y = next.handle;
                ++accepted;
            }
        }
    } while (!done());
    notify(observe, e, "iteration", {x, y});
    return x;
}

PointHandle star_ary_onemax(Engine& e, Rng& rng, const Observer& observe) {
    const std::size_t n = e.dimension();
    if (n > kMaxConsistencyDim) {
        throw ExactEnumerationUnavailable("star_ary_onemax needs n <= " + std::to_string(kMaxConsistencyDim));
    }
    const std::uint64_t t = star_ary_round_size(n);
    std::vector<PointHandle> samples(t);
    std::vector<std::int64_t> values(t);
    PointHandle w;
    do {
        for (std::uint64_t i = 0; i < t; ++i) {
            const auto s = e.apply(OperatorId::uniform_sample(), {}, rng);
            samples[i] = s.handle;
            values[i] = as_count(s.fitness);
        }
        w = e.apply(OperatorId::choose_consistent(values), samples, rng).handle;
        notify(observe, e, "round", {w});
    } while (e.fitness(w) != n_as_fitness(e));
    return w;
}

PointHandle optimize_subset(Engine& e, std::size_t ell, PointHandle anchor_complement, PointHandle anchor, Rng& rng,
                            const Observer& observe) {
    require(ell >= 1, "optimize_subset needs a non-empty block");
    const std::int64_t r = subset_round_size(ell);
    if (r <= 0) {
        // Blocks of one or two positions: the binary procedure on the anchors.
        const PointHandle w = binary_merge(e, anchor, anchor_complement, ell, rng);
        notify(observe, e, "subset", {anchor_complement, anchor, w});
        return w;
    }

    // f(anchor) + f(anchor_complement) = ell + 2 * (agreements outside the block).
    const std::int64_t f_suffix =
        (as_count(e.fitness(anchor)) + as_count(e.fitness(anchor_complement)) - static_cast<std::int64_t>(ell)) / 2;
    const auto target = static_cast<Fitness>(static_cast<std::int64_t>(ell) + f_suffix);
    const auto mix = OperatorId::random_where_different();

    std::vector<PointHandle> parents(static_cast<std::size_t>(r) + 2);
    std::vector<std::int64_t> values(static_cast<std::size_t>(r));
    parents[static_cast<std::size_t>(r)] = anchor_complement;
    parents[static_cast<std::size_t>(r) + 1] = anchor;
    PointHandle w;
    do {
        for (std::size_t i = 0; i < static_cast<std::size_t>(r); ++i) {
            const auto s = e.apply(mix, {anchor, anchor_complement}, rng);
            parents[i] = s.handle;
            values[i] = as_count(s.fitness) - f_suffix;
        }
        w = e.apply(OperatorId::choose_consistent_sub(values), parents, rng).handle;
        notify(observe, e, "subset", {anchor_complement, anchor, w});
    } while (e.fitness(w) != target);
    return w;
}

PointHandle kary_onemax(Engine& e, std::size_t k, Rng& rng, const Observer& observe) {
    require(k >= 3, "kary_onemax needs k >= 3");
    const std::size_t n = e.dimension();
    PointHandle x = e.apply(OperatorId::uniform_sample(), {}, rng).handle;
    PointHandle y = e.apply(OperatorId::complement(), {x}, rng).handle;
    const std::size_t blocks = (n + k - 1) / k;
    for (std::size_t t = 0; t < blocks; ++t) {
        const std::size_t ell = std::min(k, n - k * t);
        // z = alpha.beta.gamma, y = not(alpha).beta.gamma, x = alpha.not(beta).gamma
        const PointHandle z =
            e.apply(OperatorId::flip_k_where_different(static_cast<std::int64_t>(ell)), {x, y}, rng).handle;
        const PointHandle w = optimize_subset(e, ell, y, z, rng, observe);
        x = e.apply(OperatorId::update(), {x, w, z}, rng).handle;
        y = w;
        notify(observe, e, "block", {x, y});
    }
    return x;
}

PointHandle binary_leadingones(Engine& e, Rng& rng, const Observer& observe) {
    PointHandle x = e.apply(OperatorId::uniform_sample(), {}, rng).handle;
    PointHandle y = e.apply(OperatorId::complement(), {x}, rng).handle;
    const auto mix = OperatorId::random_where_different();
    const auto sw = OperatorId::switch_if_distance_one();
    do {
        if (e.fitness(y) > e.fitness(x)) std::swap(x, y);
        PointHandle y1 = x;
        do {
            const auto y2 = e.apply(mix, {y, y1}, rng);
            if (y2.fitness > e.fitness(y)) y1 = y2.handle;
            y = e.apply(sw, {y, y1}, rng).handle;
            notify(observe, e, "inner", {x, y, y1});
        } while (e.fitness(y) != e.fitness(y1));
        notify(observe, e, "outer", {x, y});
    } while (e.fitness(x) != e.fitness(y));
    return x;
}

PointHandle rls(Engine& e, Rng& rng, const Observer& observe) {
    const auto flip = OperatorId::flip_one_uniform();
    PointHandle x = e.apply(OperatorId::uniform_sample(), {}, rng).handle;
    while (e.fitness(x) != n_as_fitness(e)) {
        const auto next = e.apply(flip, {x}, rng);
        if (next.fitness >= e.fitness(x)) x = next.handle;
        notify(observe, e, "iteration", {x});
    }
    return x;
}

RunRecord run_binary_onemax(Engine& e, Rng& rng, const Observer& observe) {
    return run_guarded(Algorithm::BinaryOneMax, e, reported_arity(e), [&] { return binary_onemax(e, rng, observe); });
}

RunRecord run_star_ary_onemax(Engine& e, Rng& rng, const Observer& observe) {
    return run_guarded(Algorithm::StarAryOneMax, e, reported_arity(e), [&] { return star_ary_onemax(e, rng, observe); });
}

RunRecord run_kary_onemax(Engine& e, std::size_t k, Rng& rng, const Observer& observe) {
    return run_guarded(Algorithm::KaryOneMax, e, k, [&] { return kary_onemax(e, k, rng, observe); });
}

RunRecord run_binary_leadingones(Engine& e, Rng& rng, const Observer& observe) {
    return run_guarded(Algorithm::BinaryLeadingOnes, e, reported_arity(e),
                       [&] { return binary_leadingones(e, rng, observe); });
}

RunRecord run_rls_baseline(Engine& e, Rng& rng, const Observer& observe) {
    return run_guarded(Algorithm::Rls, e, reported_arity(e), [&] { return rls(e, rng, observe); });
}

void validate_combination(Algorithm a, ProblemClass cls, std::size_t n, std::size_t k) {
    if (n < 1) throw ConfigError("n must be at least 1");
    const std::string name(to_string(a));
    switch (a) {
    case Algorithm::BinaryOneMax:
        if (cls == ProblemClass::LeadingOnes) throw ConfigError(name + " supports onemax and monotone only");
        break;
    case Algorithm::StarAryOneMax:
        if (cls != ProblemClass::OneMax) throw ConfigError(name + " supports onemax only");
        if (n > kMaxConsistencyDim) throw ConfigError(name + " needs n <= 24");
        break;
    case Algorithm::KaryOneMax:
        if (cls != ProblemClass::OneMax) throw ConfigError(name + " supports onemax only");
        if (k < 3 || k > kMaxConsistencyDim) throw ConfigError(name + " needs 3 <= k <= 24");
        break;
    case Algorithm::BinaryLeadingOnes:
        if (cls != ProblemClass::LeadingOnes) throw ConfigError(name + " supports leadingones only");
        break;
    case Algorithm::Rls:
        if (cls == ProblemClass::Monotone) throw ConfigError(name + " supports onemax and leadingones only");
        break;
    }
}

RunRecord run_on_instance(Algorithm a, const HiddenInstance& instance, std::size_t k,
                          std::optional<std::uint64_t> budget, Rng& rng, const Observer& observe) {
    const std::size_t n = dimension(instance);
    validate_combination(a, problem_class(instance), n, k);
    Engine e(Oracle(instance, budget ? budget : std::optional<std::uint64_t>(default_budget(n))),
             required_arity(a, k));
    switch (a) {
    case Algorithm::BinaryOneMax: return run_binary_onemax(e, rng, observe);
    case Algorithm::StarAryOneMax: return run_star_ary_onemax(e, rng, observe);
    case Algorithm::KaryOneMax: return run_kary_onemax(e, k, rng, observe);
    case Algorithm::BinaryLeadingOnes: return run_binary_leadingones(e, rng, observe);
    case Algorithm::Rls: return run_rls_baseline(e, rng, observe);
    }
    throw ConfigError("unknown algorithm");
}

} // namespace ubb
