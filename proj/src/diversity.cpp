#include "divsets/diversity.hpp"

#include "divsets/error.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace divsets {

ColumnCounts ColumnCounts::from_rows(std::span<const BitVec> rows)
{
    ColumnCounts cc;
    cc.r = static_cast<std::int32_t>(rows.size());
    if (rows.empty()) {
        return cc;
    }
    cc.counts.assign(rows.front().size(), 0);
    for (const auto& row : rows) {
        if (row.size() != cc.counts.size()) {
            throw InvalidInput("rows of a column-count matrix must have equal length");
        }
        for (auto j : row.ones()) {
            ++cc.counts[j];
        }
    }
    return cc;
}

std::int64_t distance_sum(const ColumnCounts& columns) noexcept
{
    std::int64_t total = 0;
    for (auto c : columns.counts) {
        total += static_cast<std::int64_t>(c) * (columns.r - c);
    }
    return total;
}

std::int64_t apply_flips(ColumnCounts& columns, std::span<const ColumnFlip> flips)
{
    std::int64_t delta = 0;
    const std::int64_t r = columns.r;
    for (const auto& f : flips) {
        if (f.column >= columns.counts.size()) {
            throw ConsistencyError("column flip references a column out of range");
        }
        std::int64_t c = columns.counts[f.column];
        std::int64_t next = f.old_bit ? c - 1 : c + 1;
        if (next < 0 || next > r) {
            throw ConsistencyError("column count left [0, r] at column " + std::to_string(f.column));
        }
        delta += next * (r - next) - c * (r - c);
        columns.counts[f.column] = static_cast<std::int32_t>(next);
    }
    return delta;
}

std::int64_t distance_sum_pairwise(std::span<const BitVec> rows) noexcept
{
    std::int64_t total = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t k = i + 1; k < rows.size(); ++k) {
            total += static_cast<std::int64_t>(hamming_distance(rows[i], rows[k]));
        }
    }
    return total;
}

BoundParams bound_params(std::int64_t n, std::int64_t b, std::int64_t r)
{
    if (n <= 0 || r <= 0) {
        throw InvalidInput("diversity bound requires n >= 1 and r >= 1");
    }
    if (b < 0) {
        throw InvalidInput("diversity bound requires b >= 0");
    }
    BoundParams p{.n = n, .b = b, .r = r};
    if (2 * b <= n) {
        p.h_ceil = p.h_floor = b;
    } else {
        p.h_ceil = (n + 1) / 2;
        p.h_floor = n / 2;
    }
    const std::int64_t total = ((r + 1) / 2) * p.h_ceil + (r / 2) * p.h_floor;
    p.q = total / n;
    p.m = total % n;
    return p;
}

std::int64_t diversity_bound(std::int64_t n, std::int64_t b, std::int64_t r)
{
    const auto p = bound_params(n, b, r);
    return p.n * p.q * (p.r - p.q) + p.m * (p.r - 2 * p.q - 1);
}

namespace {

    void enumerate_multisets(const std::vector<std::uint32_t>& subsets, int r, int n, std::size_t start,
        std::vector<std::int32_t>& counts, int depth, std::int64_t& best)
    {
        if (depth == r) {
            std::int64_t d = 0;
            for (auto c : counts) {
                d += static_cast<std::int64_t>(c) * (r - c);
            }
            best = std::max(best, d);
            return;
        }
        for (std::size_t i = start; i < subsets.size(); ++i) {
            for (int j = 0; j < n; ++j) {
                counts[j] += (subsets[i] >> j) & 1U;
            }
            enumerate_multisets(subsets, r, n, i, counts, depth + 1, best);
            for (int j = 0; j < n; ++j) {
                counts[j] -= (subsets[i] >> j) & 1U;
            }
        }
    }

} // namespace

std::int64_t brute_force_max_diversity(int n, int b, int r)
{
    if (n > 6 || r > 4) {
        throw ResourceError("brute-force diversity enumeration is limited to n <= 6 and r <= 4");
    }
    if (n < 1 || r < 1 || b < 0) {
        throw InvalidInput("brute-force diversity requires n >= 1, r >= 1, b >= 0");
    }
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
        if (std::popcount(s) <= b) {
            subsets.push_back(s);
        }
    }
    std::vector<std::int32_t> counts(static_cast<std::size_t>(n), 0);
    std::int64_t best = 0;
    enumerate_multisets(subsets, r, n, 0, counts, 0, best);
    return best;
}

} // namespace divsets
