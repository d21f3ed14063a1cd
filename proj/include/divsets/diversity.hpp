#pragma once

#include "divsets/bitvec.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace divsets {

// One-counts per column of an r-row bit matrix. The pairwise Hamming distance sum of the rows
// equals sum_j c_j * (r - c_j).
struct ColumnCounts {
    std::vector<std::int32_t> counts;
    std::int32_t r = 0;

    [[nodiscard]] static ColumnCounts from_rows(std::span<const BitVec> rows);

    friend bool operator==(const ColumnCounts&, const ColumnCounts&) = default;
};

struct ColumnFlip {
    std::size_t column;
    bool old_bit;
};

// Sum over unordered pairs of rows of their Hamming distance. Theta(#columns).
[[nodiscard]] std::int64_t distance_sum(const ColumnCounts& columns) noexcept;

// Applies bit flips to the counts and returns the change in distance_sum. Theta(#flips).
// Throws ConsistencyError if a count would leave [0, r].
std::int64_t apply_flips(ColumnCounts& columns, std::span<const ColumnFlip> flips);

// Same quantity as distance_sum, computed directly from the rows with word popcounts.
// Theta(r^2 * #columns / 64); faster than building counts when r is small.
[[nodiscard]] std::int64_t distance_sum_pairwise(std::span<const BitVec> rows) noexcept;

// Intermediate integers of the closed-form diversity bound.
struct BoundParams {
    std::int64_t n = 0;
    std::int64_t b = 0;
    std::int64_t r = 0;
    std::int64_t h_ceil = 0; // ceil(min(b, n/2))
    std::int64_t h_floor = 0; // floor(min(b, n/2))
    std::int64_t q = 0;
    std::int64_t m = 0; // ceil(r/2)*h_ceil + floor(r/2)*h_floor = q*n + m, 0 <= m < n
};

[[nodiscard]] BoundParams bound_params(std::int64_t n, std::int64_t b, std::int64_t r);

// Maximum distance sum over r subsets of an n-element ground set, each of cardinality <= b:
// n*q*(r-q) + m*(r-2q-1).
[[nodiscard]] std::int64_t diversity_bound(std::int64_t n, std::int64_t b, std::int64_t r);

// Exhaustive maximum over multisets of r subsets of {1..n} with cardinality <= b.
// Guarded to n <= 6, r <= 4.
[[nodiscard]] std::int64_t brute_force_max_diversity(int n, int b, int r);

} // namespace divsets
