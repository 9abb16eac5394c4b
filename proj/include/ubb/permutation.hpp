#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ubb/bitstring.hpp"

namespace ubb {

class Rng;

/// Bijection on {0, ..., n-1}. Applied to a bitstring, output position i
/// takes input position image(i).
class Permutation {
public:
    /// Validates that mapping is a bijection.
    explicit Permutation(std::vector<std::uint32_t> mapping);

    static Permutation identity(std::size_t n);
    /// Uniform over S_n (Fisher-Yates).
    static Permutation random(std::size_t n, Rng& rng);

    std::size_t size() const noexcept { return mapping_.size(); }
    std::size_t operator[](std::size_t i) const noexcept { return mapping_[i]; }
    const std::vector<std::uint32_t>& mapping() const noexcept { return mapping_; }

    Permutation inverse() const;
    /// Space-separated 0-based images.
    std::string to_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::uint32_t> mapping_;
};

/// out_i = x_{sigma(i)}.
BitString apply_permutation(const Permutation& sigma, const BitString& x);

/// Distance-preserving map a(x) = sigma(x) XOR mask (permute first, then mask).
class HammingAutomorphism {
public:
    HammingAutomorphism(BitString mask, Permutation perm);

    static HammingAutomorphism identity(std::size_t n);
    static HammingAutomorphism random(std::size_t n, Rng& rng);

    std::size_t size() const noexcept { return mask_.size(); }
    const BitString& mask() const noexcept { return mask_; }
    const Permutation& perm() const noexcept { return perm_; }

    BitString operator()(const BitString& x) const;
    HammingAutomorphism inverse() const;

private:
    BitString mask_;
    Permutation perm_;
};

BitString apply_automorphism(const HammingAutomorphism& a, const BitString& x);

} // namespace ubb
