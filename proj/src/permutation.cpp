#include "ubb/permutation.hpp"

#include <numeric>
#include <sstream>
#include <utility>

#include "ubb/errors.hpp"
#include "ubb/rng.hpp"

namespace ubb {

Permutation::Permutation(std::vector<std::uint32_t> mapping) : mapping_(std::move(mapping)) {
    require(!mapping_.empty(), "permutation size must be positive");
    std::vector<bool> seen(mapping_.size(), false);
    for (auto image : mapping_) {
        require(image < mapping_.size() && !seen[image], "permutation mapping is not a bijection");
        seen[image] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::uint32_t> mapping(n);
    std::iota(mapping.begin(), mapping.end(), 0U);
    return Permutation(std::move(mapping));
}

Permutation Permutation::random(std::size_t n, Rng& rng) {
    std::vector<std::uint32_t> mapping(n);
    std::iota(mapping.begin(), mapping.end(), 0U);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(mapping[i - 1], mapping[rng.below(i)]);
    }
    return Permutation(std::move(mapping));
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(mapping_.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) inv[mapping_[i]] = static_cast<std::uint32_t>(i);
    return Permutation(std::move(inv));
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < mapping_.size(); ++i) {
        if (i != 0) out << ' ';
        out << mapping_[i];
    }
    return out.str();
}

BitString apply_permutation(const Permutation& sigma, const BitString& x) {
    require(sigma.size() == x.size(), "permutation size does not match bitstring length");
    BitString out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[sigma[i]]) out.set(i, true);
    }
    return out;
}

HammingAutomorphism::HammingAutomorphism(BitString mask, Permutation perm)
    : mask_(std::move(mask)), perm_(std::move(perm)) {
    require(mask_.size() == perm_.size(), "automorphism mask and permutation sizes differ");
}

HammingAutomorphism HammingAutomorphism::identity(std::size_t n) {
    return HammingAutomorphism(BitString(n), Permutation::identity(n));
}

HammingAutomorphism HammingAutomorphism::random(std::size_t n, Rng& rng) {
    BitString mask = BitString::random(n, rng);
    return HammingAutomorphism(std::move(mask), Permutation::random(n, rng));
}

BitString HammingAutomorphism::operator()(const BitString& x) const {
    require(x.size() == size(), "automorphism size does not match bitstring length");
    return apply_permutation(perm_, x) ^ mask_;
}

// a(x) = s(x) ^ m  =>  a^{-1}(w) = s^{-1}(w ^ m) = s^{-1}(w) ^ s^{-1}(m).
HammingAutomorphism HammingAutomorphism::inverse() const {
    Permutation inv = perm_.inverse();
    BitString mask = apply_permutation(inv, mask_);
    return HammingAutomorphism(std::move(mask), std::move(inv));
}

BitString apply_automorphism(const HammingAutomorphism& a, const BitString& x) { return a(x); }

} // namespace ubb
