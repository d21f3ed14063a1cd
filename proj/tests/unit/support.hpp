#pragma once

#include "divsets/bitvec.hpp"
#include "divsets/encoding.hpp"
#include "divsets/graph.hpp"
#include "divsets/rng.hpp"

#include <cmath>
#include <vector>

namespace divsets::test {

inline BitVec random_bits(std::size_t n, Rng& rng, double p = 0.5)
{
    BitVec b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b.assign(i, coin(rng, p));
    }
    return b;
}

inline std::vector<BitVec> random_rows(std::size_t r, std::size_t n, Rng& rng, double p = 0.5)
{
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < r; ++i) {
        rows.push_back(random_bits(n, rng, p));
    }
    return rows;
}

inline Individual random_individual(std::size_t r, std::size_t n, Rng& rng, double p = 0.5)
{
    const auto rows = random_rows(r, n, rng, p);
    return encode(rows);
}

// Erdos-Renyi G(n, p).
inline Graph random_graph(std::size_t n, double p, Rng& rng)
{
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (coin(rng, p)) {
                edges.push_back({u, v});
            }
        }
    }
    return Graph(n, std::move(edges));
}

inline BitVec bits_of(std::size_t n, std::initializer_list<std::size_t> ones)
{
    BitVec b(n);
    for (auto i : ones) {
        b.set(i);
    }
    return b;
}

// Pairwise Hamming distance sum by definition.
inline std::int64_t naive_distance_sum(const std::vector<BitVec>& rows)
{
    std::int64_t total = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            for (std::size_t k = 0; k < rows[i].size(); ++k) {
                total += rows[i].test(k) != rows[j].test(k);
            }
        }
    }
    return total;
}

// |observed - expected| within `z` standard errors of a binomial(trials, p) count.
inline bool within_binomial(double observed, double trials, double p, double z = 3.0)
{
    const double sd = std::sqrt(trials * p * (1.0 - p));
    return std::abs(observed - trials * p) <= z * sd;
}

} // namespace divsets::test
