#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace divsets {

using Rng = std::mt19937_64;

// Visits each index in [0, length) independently with probability p, in ascending order.
// Uses geometric gaps, so the cost is proportional to the number of visited indices.
template <typename Visit>
void for_each_bernoulli(std::size_t length, double p, Rng& rng, Visit&& visit)
{
    if (length == 0 || !(p > 0.0)) {
        return;
    }
    if (p >= 1.0) {
        for (std::size_t i = 0; i < length; ++i) {
            visit(i);
        }
        return;
    }
    std::geometric_distribution<std::uint64_t> gap(p);
    std::uint64_t pos = gap(rng);
    while (pos < length) {
        visit(static_cast<std::size_t>(pos));
        pos += 1 + gap(rng);
    }
}

[[nodiscard]] inline bool coin(Rng& rng, double p)
{
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

[[nodiscard]] inline std::size_t uniform_index(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

} // namespace divsets
