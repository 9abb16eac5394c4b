#include "ubb/bitstring.hpp"

#include <bit>

#include "ubb/errors.hpp"
#include "ubb/rng.hpp"

namespace ubb {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + BitString::kWordBits - 1) / BitString::kWordBits; }

void require_same_length(const BitString& x, const BitString& y) {
    require(x.size() == y.size(), "bitstring length mismatch");
}

} // namespace

BitString::BitString(std::size_t length) : size_(length), words_(word_count(length), 0) {
    require(length > 0, "bitstring length must be positive");
}

BitString::BitString(std::size_t length, std::vector<Word> words) : size_(length), words_(std::move(words)) {
    clear_padding();
}

void BitString::clear_padding() noexcept {
    const std::size_t tail = size_ % kWordBits;
    if (tail != 0) words_.back() &= (Word{1} << tail) - 1;
}

BitString BitString::ones(std::size_t length) {
    require(length > 0, "bitstring length must be positive");
    return BitString(length, std::vector<Word>(word_count(length), ~Word{0}));
}

BitString BitString::parse(std::string_view text) {
    BitString out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            out.set(i, true);
        } else if (text[i] != '0') {
            throw ContractViolation("bitstring text may only contain '0' and '1'");
        }
    }
    return out;
}

BitString BitString::from_code(std::uint64_t code, std::size_t n) {
    require(n <= 64, "from_code supports at most 64 positions");
    BitString out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((code >> (n - 1 - i)) & 1U) out.set(i, true);
    }
    return out;
}

BitString BitString::random(std::size_t length, Rng& rng) {
    require(length > 0, "bitstring length must be positive");
    std::vector<Word> words(word_count(length));
    for (auto& w : words) w = rng.next_u64();
    return BitString(length, std::move(words));
}

bool BitString::at(std::size_t i) const {
    require(i < size_, "bit position out of range");
    return (*this)[i];
}

void BitString::set(std::size_t i, bool value) {
    require(i < size_, "bit position out of range");
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

void BitString::flip(std::size_t i) {
    require(i < size_, "bit position out of range");
    words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
}

std::size_t BitString::popcount() const noexcept {
    std::size_t count = 0;
    for (Word w : words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
}

BitString BitString::complement() const {
    std::vector<Word> words(words_);
    for (auto& w : words) w = ~w;
    return BitString(size_, std::move(words));
}

std::uint64_t BitString::code() const {
    require(size_ <= 64, "code() supports at most 64 positions");
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < size_; ++i) code = (code << 1) | ((*this)[i] ? 1U : 0U);
    return code;
}

std::string BitString::to_string() const {
    std::string out(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if ((*this)[i]) out[i] = '1';
    }
    return out;
}

std::vector<std::size_t> BitString::ones_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        Word bits = words_[w];
        while (bits != 0) {
            out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

BitString& BitString::operator^=(const BitString& other) {
    require_same_length(*this, other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

BitString& BitString::operator&=(const BitString& other) {
    require_same_length(*this, other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

std::size_t hamming_distance(const BitString& x, const BitString& y) {
    require_same_length(x, y);
    std::size_t d = 0;
    const auto& a = x.words();
    const auto& b = y.words();
    for (std::size_t w = 0; w < a.size(); ++w) d += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
    return d;
}

std::vector<std::size_t> differing_positions(const BitString& x, const BitString& y) {
    return (x ^ y).ones_positions();
}

BitString update_bits(const BitString& a, const BitString& b, const BitString& c) {
    require_same_length(a, b);
    require_same_length(a, c);
    std::vector<BitString::Word> words(a.words_.size());
    for (std::size_t w = 0; w < words.size(); ++w) {
        const BitString::Word equal = ~(a.words_[w] ^ c.words_[w]);
        words[w] = (equal & b.words_[w]) | (~equal & a.words_[w]);
    }
    return BitString(a.size_, std::move(words));
}

} // namespace ubb
