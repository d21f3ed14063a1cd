#include "divsets/bitvec.hpp"

#include "divsets/error.hpp"

#include <algorithm>

namespace divsets {

BitVec::BitVec(std::size_t nbits, bool value)
    : size_(nbits), words_((nbits + word_bits - 1) / word_bits, value ? ~Word{0} : Word{0})
{
    if (value && !words_.empty()) {
        words_.back() &= tail_mask(words_.size() - 1);
    }
}

BitVec BitVec::from_string(std::string_view bits)
{
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw InvalidInput("bit string contains a character other than 0/1");
        }
    }
    return v;
}

BitVec::Word BitVec::tail_mask(std::size_t word) const noexcept
{
    if (word + 1 < words_.size() || size_ % word_bits == 0) {
        return ~Word{0};
    }
    return (Word{1} << (size_ % word_bits)) - 1;
}

void BitVec::flip_all() noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] = ~words_[w] & tail_mask(w);
    }
}

void BitVec::clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

std::size_t BitVec::count() const noexcept
{
    std::size_t c = 0;
    for (auto w : words_) {
        c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
}

bool BitVec::any() const noexcept
{
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::vector<std::size_t> BitVec::ones() const
{
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        for (Word bits = words_[w]; bits != 0; bits &= bits - 1) {
            out.push_back(w * word_bits + static_cast<std::size_t>(std::countr_zero(bits)));
        }
    }
    return out;
}

std::vector<std::size_t> BitVec::zeros() const
{
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        for (Word bits = ~words_[w] & tail_mask(w); bits != 0; bits &= bits - 1) {
            out.push_back(w * word_bits + static_cast<std::size_t>(std::countr_zero(bits)));
        }
    }
    return out;
}

BitVec& BitVec::operator|=(const BitVec& other) noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& other) noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

BitVec& BitVec::operator^=(const BitVec& other) noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVec& BitVec::subtract(const BitVec& other) noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] &= ~other.words_[w];
    }
    return *this;
}

bool BitVec::intersects_complement_of(const BitVec& other) const noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & ~other.words_[w]) != 0) {
            return true;
        }
    }
    return false;
}

bool BitVec::intersects(const BitVec& other) const noexcept
{
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & other.words_[w]) != 0) {
            return true;
        }
    }
    return false;
}

std::string BitVec::to_string() const
{
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (test(i)) {
            s[i] = '1';
        }
    }
    return s;
}

std::size_t hamming_distance(const BitVec& a, const BitVec& b) noexcept
{
    auto wa = a.words();
    auto wb = b.words();
    std::size_t d = 0;
    for (std::size_t w = 0; w < wa.size(); ++w) {
        d += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
    }
    return d;
}

} // namespace divsets
