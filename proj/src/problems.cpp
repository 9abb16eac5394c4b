#include "ubb/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "ubb/errors.hpp"
#include "ubb/rng.hpp"

namespace ubb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_length(const BitString& z, const BitString& x) {
    require(z.size() == x.size(), "query length does not match instance dimension");
}

} // namespace

std::string_view to_string(ProblemClass cls) noexcept {
    switch (cls) {
    case ProblemClass::OneMax: return "onemax";
    case ProblemClass::LeadingOnes: return "leadingones";
    case ProblemClass::Monotone: return "monotone";
    }
    return "unknown";
}

std::optional<ProblemClass> parse_problem_class(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "onemax") return ProblemClass::OneMax;
    if (lower == "leadingones") return ProblemClass::LeadingOnes;
    if (lower == "monotone") return ProblemClass::Monotone;
    return std::nullopt;
}

Fitness evaluate_onemax(const OneMaxInstance& inst, const BitString& x) {
    require_length(inst.z, x);
    return static_cast<Fitness>(x.size() - hamming_distance(inst.z, x));
}

Fitness evaluate_leadingones(const LeadingOnesInstance& inst, const BitString& x) {
    require_length(inst.z, x);
    const std::size_t n = x.size();
    std::size_t i = 0;
    while (i < n && x[inst.sigma[i]] == inst.z[inst.sigma[i]]) ++i;
    return static_cast<Fitness>(i);
}

// Weights sit on a 2^-32 grid, so partial sums are exact for n < 2^21 and
// strict monotonicity survives floating point.
Fitness evaluate_monotone(const MonotoneInstance& inst, const BitString& x) {
    require_length(inst.z, x);
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == inst.z[i]) total += inst.weights[i];
    }
    return total;
}

Fitness evaluate(const HiddenInstance& inst, const BitString& x) {
    return std::visit(overloaded{
                          [&](const OneMaxInstance& i) { return evaluate_onemax(i, x); },
                          [&](const LeadingOnesInstance& i) { return evaluate_leadingones(i, x); },
                          [&](const MonotoneInstance& i) { return evaluate_monotone(i, x); },
                      },
                      inst);
}

ProblemClass problem_class(const HiddenInstance& inst) noexcept {
    return std::visit(overloaded{
                          [](const OneMaxInstance&) { return ProblemClass::OneMax; },
                          [](const LeadingOnesInstance&) { return ProblemClass::LeadingOnes; },
                          [](const MonotoneInstance&) { return ProblemClass::Monotone; },
                      },
                      inst);
}

const BitString& optimum(const HiddenInstance& inst) noexcept {
    return std::visit([](const auto& i) -> const BitString& { return i.z; }, inst);
}

std::size_t dimension(const HiddenInstance& inst) noexcept { return optimum(inst).size(); }

Fitness optimal_value(const HiddenInstance& inst) { return evaluate(inst, optimum(inst)); }

HiddenInstance random_instance(ProblemClass cls, std::size_t n, std::uint64_t seed) {
    require(n >= 1, "instance dimension must be at least 1");
    Rng rng(seed);
    BitString z = BitString::random(n, rng);
    switch (cls) {
    case ProblemClass::OneMax: return OneMaxInstance{std::move(z)};
    case ProblemClass::LeadingOnes: {
        Permutation sigma = Permutation::random(n, rng);
        return LeadingOnesInstance{std::move(z), std::move(sigma)};
    }
    case ProblemClass::Monotone: {
        std::vector<double> weights(n);
        for (auto& w : weights) w = static_cast<double>((rng.next_u64() >> 32) + 1) * 0x1.0p-32;
        return MonotoneInstance{std::move(z), std::move(weights)};
    }
    }
    throw ContractViolation("unknown problem class");
}

std::string describe_hidden(const HiddenInstance& inst) {
    std::ostringstream out;
    out << "z=" << optimum(inst).to_string();
    if (const auto* lo = std::get_if<LeadingOnesInstance>(&inst)) {
        out << " sigma=" << lo->sigma.to_string();
    } else if (const auto* mono = std::get_if<MonotoneInstance>(&inst)) {
        out << " weights=";
        char buf[32];
        for (std::size_t i = 0; i < mono->weights.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.9g", mono->weights[i]);
            out << (i == 0 ? "" : " ") << buf;
        }
    }
    return out.str();
}

} // namespace ubb
