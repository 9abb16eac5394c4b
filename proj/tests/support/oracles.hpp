#pragma once

// Brute-force reference implementations used as test oracles. They work on
// '0'/'1' strings and plain loops, independent of the library's bit packing.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

inline std::size_t distance(const std::string& a, const std::string& b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
    return d;
}

inline std::size_t agreement(const std::string& a, const std::string& b) { return a.size() - distance(a, b); }

/// Every string of length n, lexicographic.
inline std::vector<std::string> cube(std::size_t n) {
    std::vector<std::string> all;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
        std::string s(n, '0');
        for (std::size_t i = 0; i < n; ++i) {
            if ((c >> (n - 1 - i)) & 1U) s[i] = '1';
        }
        all.push_back(s);
    }
    return all;
}

inline std::vector<std::string> consistent(std::size_t n, const std::vector<std::string>& points,
                                           const std::vector<std::int64_t>& values) {
    std::vector<std::string> out;
    for (const auto& z : cube(n)) {
        bool ok = true;
        for (std::size_t i = 0; i < points.size() && ok; ++i) {
            ok = static_cast<std::int64_t>(agreement(points[i], z)) == values[i];
        }
        if (ok) out.push_back(z);
    }
    return out;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
    std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (unsigned i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (unsigned j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c[n][k];
}

/// Output distribution of "copy x, flip one uniform position where x and y differ".
inline std::map<std::string, double> flip_one_pmf(const std::string& x, const std::string& y) {
    std::map<std::string, double> pmf;
    const std::size_t d = distance(x, y);
    if (d == 0) {
        pmf[x] = 1.0;
        return pmf;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == y[i]) continue;
        std::string z = x;
        z[i] = z[i] == '0' ? '1' : '0';
        pmf[z] += 1.0 / static_cast<double>(d);
    }
    return pmf;
}

} // namespace oracle
