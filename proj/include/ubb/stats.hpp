#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace ubb::stats {

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    /// Upper tail probability; 1 when dof == 0.
    double p_value = 1.0;
};

/// P(X >= statistic) for X ~ chi^2(dof).
double chi_square_survival(double statistic, std::size_t dof);

/// Pearson goodness of fit of observed counts against expected probabilities
/// (same indexing). Cells with expected count below min_expected are pooled.
ChiSquareResult goodness_of_fit(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                double min_expected = 5.0);

/// Pearson test that two samples over the same categories share a distribution.
/// Categories whose pooled count is below min_count are merged.
template <class Key>
ChiSquareResult homogeneity(const std::map<Key, std::uint64_t>& a, const std::map<Key, std::uint64_t>& b,
                            std::uint64_t min_count = 10);

/// Mean and sample standard deviation.
struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Welford's one-pass update.
Moments moments_one_pass(std::span<const double> xs);
/// Mean first, then squared deviations.
Moments moments_two_pass(std::span<const double> xs);
double median(std::vector<double> xs);

namespace detail {
ChiSquareResult homogeneity_counts(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                   std::uint64_t min_count);
}

template <class Key>
ChiSquareResult homogeneity(const std::map<Key, std::uint64_t>& a, const std::map<Key, std::uint64_t>& b,
                            std::uint64_t min_count) {
    std::map<Key, std::pair<std::uint64_t, std::uint64_t>> joint;
    for (const auto& [k, c] : a) joint[k].first += c;
    for (const auto& [k, c] : b) joint[k].second += c;
    std::vector<std::uint64_t> ca, cb;
    ca.reserve(joint.size());
    cb.reserve(joint.size());
    for (const auto& [k, pair] : joint) {
        ca.push_back(pair.first);
        cb.push_back(pair.second);
    }
    return detail::homogeneity_counts(ca, cb, min_count);
}

} // namespace ubb::stats
