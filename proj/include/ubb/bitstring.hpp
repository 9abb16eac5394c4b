#pragma once

/// @file bitstring.hpp
/// @brief Packed fixed-length bitstrings and Hamming geometry.
///
/// Positions are 0-based in code and in every external format. The textual
/// form writes position 0 leftmost, so "1000" has only position 0 set.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ubb {

class Rng;

class BitString {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    /// All-zero string of the given length (length must be positive).
    explicit BitString(std::size_t length);

    static BitString ones(std::size_t length);
    /// Parses '0'/'1' characters, position 0 first.
    static BitString parse(std::string_view text);
    /// Length-n string whose position i holds bit (n-1-i) of code, i.e. the
    /// lexicographic enumeration order of {0,1}^n. Requires n <= 64.
    static BitString from_code(std::uint64_t code, std::size_t n);
    /// Independent fair bits.
    static BitString random(std::size_t length, Rng& rng);

    std::size_t size() const noexcept { return size_; }
    bool operator[](std::size_t i) const noexcept {
        return ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) != 0;
    }
    bool at(std::size_t i) const;

    void set(std::size_t i, bool value);
    void flip(std::size_t i);

    std::size_t popcount() const noexcept;
    BitString complement() const;

    /// Inverse of from_code. Requires size() <= 64.
    std::uint64_t code() const;
    std::string to_string() const;

    /// Ascending positions holding a 1.
    std::vector<std::size_t> ones_positions() const;

    const std::vector<Word>& words() const noexcept { return words_; }

    BitString& operator^=(const BitString& other);
    friend BitString operator^(BitString lhs, const BitString& rhs) { return lhs ^= rhs; }
    BitString& operator&=(const BitString& other);
    friend BitString operator&(BitString lhs, const BitString& rhs) { return lhs &= rhs; }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend std::strong_ordering operator<=>(const BitString&, const BitString&) = default;

private:
    BitString(std::size_t length, std::vector<Word> words);
    void clear_padding() noexcept;

    std::size_t size_;
    std::vector<Word> words_;

    friend BitString update_bits(const BitString&, const BitString&, const BitString&);
};

std::size_t hamming_distance(const BitString& x, const BitString& y);
/// Positions where x and y differ, ascending.
std::vector<std::size_t> differing_positions(const BitString& x, const BitString& y);

/// Positionwise: b_i where a_i == c_i, else a_i.
BitString update_bits(const BitString& a, const BitString& b, const BitString& c);

} // namespace ubb
