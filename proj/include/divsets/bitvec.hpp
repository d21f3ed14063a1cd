#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divsets {

// Fixed-length bit vector packed into 64-bit words. Bits past size() are kept zero.
class BitVec {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitVec() = default;
    explicit BitVec(std::size_t nbits, bool value = false);

    // Parses a string of '0'/'1' characters, most significant position first (index 0 = first char).
    static BitVec from_string(std::string_view bits);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t word_count() const noexcept { return words_.size(); }

    [[nodiscard]] bool test(std::size_t i) const noexcept { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }
    void set(std::size_t i) noexcept { words_[i / word_bits] |= Word{1} << (i % word_bits); }
    void reset(std::size_t i) noexcept { words_[i / word_bits] &= ~(Word{1} << (i % word_bits)); }
    void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }
    void flip(std::size_t i) noexcept { words_[i / word_bits] ^= Word{1} << (i % word_bits); }
    void flip_all() noexcept;
    void clear() noexcept;

    [[nodiscard]] std::size_t count() const noexcept;
    [[nodiscard]] bool any() const noexcept;
    [[nodiscard]] bool none() const noexcept { return !any(); }

    // Positions of the set bits, ascending.
    [[nodiscard]] std::vector<std::size_t> ones() const;
    [[nodiscard]] std::vector<std::size_t> zeros() const;

    // Mask of valid bits in the given word (all ones except possibly in the last word).
    [[nodiscard]] Word tail_mask(std::size_t word) const noexcept;

    [[nodiscard]] std::span<Word> words() noexcept { return words_; }
    [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }

    BitVec& operator|=(const BitVec& other) noexcept;
    BitVec& operator&=(const BitVec& other) noexcept;
    BitVec& operator^=(const BitVec& other) noexcept;
    // this &= ~other
    BitVec& subtract(const BitVec& other) noexcept;

    // Whether (this & ~other) has any bit set.
    [[nodiscard]] bool intersects_complement_of(const BitVec& other) const noexcept;
    [[nodiscard]] bool intersects(const BitVec& other) const noexcept;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const BitVec&, const BitVec&) = default;

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

// |a xor b| for equal-length vectors.
[[nodiscard]] std::size_t hamming_distance(const BitVec& a, const BitVec& b) noexcept;

} // namespace divsets
