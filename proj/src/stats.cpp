#include "ubb/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "ubb/errors.hpp"

namespace ubb::stats {

double chi_square_survival(double statistic, std::size_t dof) {
    if (dof == 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    const boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult goodness_of_fit(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                                double min_expected) {
    require(observed.size() == probabilities.size(), "goodness_of_fit: size mismatch");
    double total = 0.0;
    for (auto c : observed) total += static_cast<double>(c);
    require(total > 0.0, "goodness_of_fit: no observations");

    // Pool small cells in index order so every pooled cell reaches min_expected.
    std::vector<std::pair<double, double>> cells; // (observed, expected)
    double obs_acc = 0.0;
    double exp_acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        obs_acc += static_cast<double>(observed[i]);
        exp_acc += probabilities[i] * total;
        if (exp_acc >= min_expected) {
            cells.emplace_back(obs_acc, exp_acc);
            obs_acc = exp_acc = 0.0;
        }
    }
    if (exp_acc > 0.0 || obs_acc > 0.0) {
        if (cells.empty()) {
            cells.emplace_back(obs_acc, exp_acc);
        } else {
            cells.back().first += obs_acc;
            cells.back().second += exp_acc;
        }
    }

    ChiSquareResult r;
    for (const auto& [o, e] : cells) {
        if (e > 0.0) {
            r.statistic += (o - e) * (o - e) / e;
        } else if (o > 0.0) {
            r.statistic = INFINITY;
        }
    }
    r.dof = cells.empty() ? 0 : cells.size() - 1;
    r.p_value = std::isinf(r.statistic) ? 0.0 : chi_square_survival(r.statistic, r.dof);
    return r;
}

namespace detail {

ChiSquareResult homogeneity_counts(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                   std::uint64_t min_count) {
    std::vector<std::pair<double, double>> cells;
    double acc_a = 0.0;
    double acc_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc_a += static_cast<double>(a[i]);
        acc_b += static_cast<double>(b[i]);
        if (acc_a + acc_b >= static_cast<double>(min_count)) {
            cells.emplace_back(acc_a, acc_b);
            acc_a = acc_b = 0.0;
        }
    }
    if (acc_a + acc_b > 0.0) {
        if (cells.empty()) {
            cells.emplace_back(acc_a, acc_b);
        } else {
            cells.back().first += acc_a;
            cells.back().second += acc_b;
        }
    }

    double na = 0.0;
    double nb = 0.0;
    for (const auto& [ca, cb] : cells) {
        na += ca;
        nb += cb;
    }
    ChiSquareResult r;
    if (cells.size() < 2 || na == 0.0 || nb == 0.0) return r;
    const double total = na + nb;
    for (const auto& [ca, cb] : cells) {
        const double row = ca + cb;
        const double ea = row * na / total;
        const double eb = row * nb / total;
        r.statistic += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
    }
    r.dof = cells.size() - 1;
    r.p_value = chi_square_survival(r.statistic, r.dof);
    return r;
}

} // namespace detail

Moments moments_one_pass(std::span<const double> xs) {
    Moments m;
    double m2 = 0.0;
    for (double x : xs) {
        ++m.count;
        const double delta = x - m.mean;
        m.mean += delta / static_cast<double>(m.count);
        m2 += delta * (x - m.mean);
    }
    m.stddev = m.count > 1 ? std::sqrt(m2 / static_cast<double>(m.count - 1)) : 0.0;
    return m;
}

Moments moments_two_pass(std::span<const double> xs) {
    Moments m;
    m.count = xs.size();
    if (xs.empty()) return m;
    double sum = 0.0;
    for (double x : xs) sum += x;
    m.mean = sum / static_cast<double>(m.count);
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stddev = m.count > 1 ? std::sqrt(ss / static_cast<double>(m.count - 1)) : 0.0;
    return m;
}

double median(std::vector<double> xs) {
    require(!xs.empty(), "median of an empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

} // namespace ubb::stats
