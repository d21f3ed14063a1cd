#include "divsets/dominance.hpp"

#include "divsets/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace divsets {

DominanceRelation dominates(const FitnessVector& a, const FitnessVector& b)
{
    if (std::isnan(a.f1) || std::isnan(a.f2) || std::isnan(b.f1) || std::isnan(b.f2)) {
        throw InvalidInput("dominance check on a NaN fitness");
    }
    using O = DominanceRelation::Outcome;
    const bool a_ge = a.f1 >= b.f1 && a.f2 >= b.f2;
    const bool b_ge = b.f1 >= a.f1 && b.f2 >= a.f2;
    if (a_ge && b_ge) {
        return {O::Equal, false};
    }
    if (a_ge) {
        return {O::ADominates, true};
    }
    if (b_ge) {
        return {O::BDominates, true};
    }
    return {O::Incomparable, false};
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const FitnessVector> points)
{
    const auto n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    if (n == 0) {
        return fronts;
    }
    fronts.emplace_back();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (strictly_dominates(points[p], points[q])) {
                dominated_by[p].push_back(q);
                ++domination_count[q];
            } else if (strictly_dominates(points[q], points[p])) {
                dominated_by[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (domination_count[p] == 0) {
            fronts[0].push_back(p);
        }
    }
    for (std::size_t i = 0; !fronts[i].empty(); ++i) {
        std::vector<std::size_t> next;
        for (auto p : fronts[i]) {
            for (auto q : dominated_by[p]) {
                if (--domination_count[q] == 0) {
                    next.push_back(q);
                }
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

std::vector<double> crowding_distance(std::span<const FitnessVector> front)
{
    const auto n = front.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (n <= 2) {
        return std::vector<double>(n, inf);
    }
    std::vector<double> distance(n, 0.0);
    std::vector<std::size_t> order(n);
    for (auto objective : {&FitnessVector::f1, &FitnessVector::f2}) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return front[a].*objective < front[b].*objective; });
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        const double range = front[order.back()].*objective - front[order.front()].*objective;
        if (range <= 0.0) {
            continue;
        }
        for (std::size_t k = 1; k + 1 < n; ++k) {
            distance[order[k]] += (front[order[k + 1]].*objective - front[order[k - 1]].*objective) / range;
        }
    }
    return distance;
}

std::vector<std::size_t> nondominated_indices(std::span<const FitnessVector> points)
{
    // Sort by f1 descending, then f2 descending; a point survives iff its f2 beats every
    // f2 seen at a strictly larger f1 and it is not a duplicate.
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].f1 != points[b].f1) {
            return points[a].f1 > points[b].f1;
        }
        return points[a].f2 > points[b].f2;
    });
    std::vector<std::size_t> keep;
    double best_f2 = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& p = points[order[k]];
        if (k > 0 && points[order[k - 1]] == p) {
            continue;
        }
        // Within a run of equal f1, only the first (largest f2) can be non-dominated.
        if (k > 0 && points[order[k - 1]].f1 == p.f1) {
            continue;
        }
        if (p.f2 > best_f2) {
            keep.push_back(order[k]);
            best_f2 = p.f2;
        }
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

std::vector<FitnessVector> nondominated_filter(std::span<const FitnessVector> points)
{
    std::vector<FitnessVector> out;
    for (auto i : nondominated_indices(points)) {
        out.push_back(points[i]);
    }
    return out;
}

} // namespace divsets
