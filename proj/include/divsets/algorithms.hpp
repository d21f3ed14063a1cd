#pragma once

#include "divsets/dominance.hpp"
#include "divsets/encoding.hpp"
#include "divsets/problems.hpp"
#include "divsets/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace divsets {

enum class Algorithm { Nsga2, Spea2 };

[[nodiscard]] std::string_view to_string(Algorithm alg) noexcept;
[[nodiscard]] Algorithm parse_algorithm(std::string_view text);

struct RunConfig {
    Algorithm algorithm = Algorithm::Nsga2;
    std::size_t set_size = 10; // r
    std::size_t population_size = 20; // N, also offspring per generation and SPEA2 archive size
    double crossover_rate = 0.8;
    double chi_numerator = 0.5; // mutation probability chi = chi_numerator / n
    double budget_multiplier = 5.0; // budget = multiplier * r * n * N individual evaluations
    std::optional<std::uint64_t> budget_override;
    bool repair = false; // min vertex cover only
    bool biased_mutation = true; // max coverage only
    std::uint64_t seed = 0;

    // Called after every generation's replacement with the evaluations used so far.
    std::function<void(std::uint64_t, std::span<const Individual>)> observer;
};

[[nodiscard]] std::uint64_t evaluation_budget(const RunConfig& config, std::size_t n);

struct RunResult {
    // Final population (NSGA-II) or archive (SPEA2), dominated and fitness-duplicate entries removed.
    std::vector<Individual> archive;
    std::uint64_t evaluations = 0;
    std::uint64_t budget = 0;
    std::uint64_t generations = 0;
};

// SPEA2 fitness (minimized): raw strength-based rank plus 1/(sigma_k + 2) density,
// k = floor(sqrt(size)). Non-dominated points score below 1.
[[nodiscard]] std::vector<double> spea2_fitness(std::span<const FitnessVector> points);

// Indices of the next SPEA2 archive: all non-dominated points, truncated by iterated removal of
// the point with the lexicographically smallest sorted neighbor-distance vector, or filled with
// the best dominated points by fitness.
[[nodiscard]] std::vector<std::size_t> spea2_environmental_selection(
    std::span<const FitnessVector> points, std::span<const double> fitness, std::size_t capacity);

// Draws two indices uniformly with replacement and returns the better one. `compare(i, j)` is
// negative if i is better, positive if j is, zero on a tie (broken uniformly at random).
template <typename Compare>
[[nodiscard]] std::size_t binary_tournament(std::size_t size, Compare&& compare, Rng& rng)
{
    const auto i = uniform_index(rng, size);
    const auto j = uniform_index(rng, size);
    const int c = compare(i, j);
    if (c < 0) {
        return i;
    }
    if (c > 0) {
        return j;
    }
    return coin(rng, 0.5) ? i : j;
}

// One seeded run on the instance until the evaluation budget is used up.
[[nodiscard]] RunResult run(const ProblemInstance& inst, Aggregation agg, const RunConfig& config);

} // namespace divsets
