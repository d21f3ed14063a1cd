#pragma once

#include "divsets/encoding.hpp"

#include <span>
#include <vector>

namespace divsets {

struct DominanceRelation {
    enum class Outcome { ADominates, BDominates, Equal, Incomparable };

    Outcome outcome = Outcome::Incomparable;
    bool strict = false;

    // Weak dominance a >= b on both objectives (true for equal vectors).
    [[nodiscard]] bool a_weakly() const noexcept { return outcome == Outcome::ADominates || outcome == Outcome::Equal; }
    [[nodiscard]] bool b_weakly() const noexcept { return outcome == Outcome::BDominates || outcome == Outcome::Equal; }
};

// Maximization on both objectives. Throws InvalidInput on NaN.
[[nodiscard]] DominanceRelation dominates(const FitnessVector& a, const FitnessVector& b);

// True iff a >= b componentwise with at least one strict inequality. No NaN check.
[[nodiscard]] inline bool strictly_dominates(const FitnessVector& a, const FitnessVector& b) noexcept
{
    return a.f1 >= b.f1 && a.f2 >= b.f2 && (a.f1 > b.f1 || a.f2 > b.f2);
}

// Partition into fronts of non-domination; front 0 is the non-dominated set.
[[nodiscard]] std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const FitnessVector> points);

// Crowding distance of each front member: boundary points are +infinity, interior points sum
// the normalized neighbor gaps over both objectives.
[[nodiscard]] std::vector<double> crowding_distance(std::span<const FitnessVector> front);

// Indices of points not strictly dominated by any other; among equal vectors only the first
// occurrence is kept.
[[nodiscard]] std::vector<std::size_t> nondominated_indices(std::span<const FitnessVector> points);
[[nodiscard]] std::vector<FitnessVector> nondominated_filter(std::span<const FitnessVector> points);

} // namespace divsets
