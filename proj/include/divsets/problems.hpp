#pragma once

#include "divsets/encoding.hpp"
#include "divsets/graph.hpp"
#include "divsets/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divsets {

enum class ProblemKind { MaxCut, MaxCoverage, MinVertexCover };
enum class Aggregation { Min, Avg };

[[nodiscard]] std::string_view to_string(ProblemKind kind) noexcept;
[[nodiscard]] std::string_view to_string(Aggregation agg) noexcept;
[[nodiscard]] ProblemKind parse_problem_kind(std::string_view text);
[[nodiscard]] Aggregation parse_aggregation(std::string_view text);

struct ProblemInstance {
    std::string name;
    ProblemKind kind = ProblemKind::MaxCut;
    Graph graph;
    std::optional<std::int64_t> coverage_budget; // B, max coverage only
    std::optional<double> known_opt;

    // Number of diversity columns: edges for max cut, vertices otherwise.
    [[nodiscard]] std::size_t diversity_columns() const noexcept;
    // Cardinality cap used in the diversity bound: OPT (max cut, MVC) or B (coverage).
    // Empty when the required value is unknown.
    [[nodiscard]] std::optional<std::int64_t> bound_cardinality() const noexcept;
    // g(columns, cap, r) when the cap is known.
    [[nodiscard]] std::optional<std::int64_t> diversity_upper_bound(std::int64_t r) const;
    // Weight of C(I) in the penalized diversity: r|V| (coverage), r|E| (MVC), 0 (max cut).
    [[nodiscard]] std::int64_t penalty_weight(std::int64_t r) const noexcept;
};

// Whether one unit of violation costs more diversity than any individual can have, so that
// every infeasible individual has lower f2 than every feasible one.
[[nodiscard]] bool penalty_exceeds_diversity(const ProblemInstance& inst, std::int64_t r);

// Validates kind-specific fields (B present and non-negative for coverage).
void validate(const ProblemInstance& inst);

struct ViolationReport {
    std::vector<std::int64_t> per_solution;
    std::int64_t total = 0;
};

// Max cut.
[[nodiscard]] std::int64_t maxcut_objective(const Graph& g, const Solution& x);
[[nodiscard]] BitVec maxcut_cut_indicator(const Graph& g, const Solution& x);

struct MaxCutSetValues {
    std::vector<std::int64_t> cuts; // per solution
    std::int64_t edge_diversity = 0; // distance sum of the cut indicator vectors
};

// Cut sizes and edge-space diversity of a solution set; one pass over the edges for r <= 64.
[[nodiscard]] MaxCutSetValues maxcut_set_values(const Graph& g, std::span<const Solution> set);

// Max coverage.
[[nodiscard]] std::int64_t maxcoverage_objective(const Graph& g, const Solution& x);
[[nodiscard]] std::int64_t maxcoverage_violation(const Solution& x, std::int64_t budget);
// Within each solution x, 1-bits flip with probability chi*(C(x)+1) (clamped to 1), 0-bits with chi.
[[nodiscard]] Individual coverage_biased_mutation(
    Individual ind, double chi, const ViolationReport& violations, Rng& rng);

// Min vertex cover.
[[nodiscard]] std::int64_t mvc_objective(const Graph& g, const Solution& x);
[[nodiscard]] std::int64_t mvc_violation(const Graph& g, const Solution& x);
// Two-phase repair: add 0-bits incident to uncovered edges in random order, then drop 1-bits
// whose neighbors are all selected, in random order. Output is a cover with no vertex
// removable on its own.
void mvc_repair(const Graph& g, Solution& x, Rng& rng);

// C(x) of every solution under the instance's constraint (all zero for max cut).
[[nodiscard]] ViolationReport violations(const ProblemInstance& inst, const Individual& ind);

// Repairs every infeasible solution of an MVC individual. Returns the number repaired.
std::size_t repair_individual(const ProblemInstance& inst, Individual& ind, Rng& rng);

struct Evaluation {
    FitnessVector fitness;
    std::int64_t violation = 0; // C(I)
};

// Bi-objective fitness of an individual. With repair_active (MVC only) the solutions are
// expected to be feasible already and C(I) is not computed.
[[nodiscard]] Evaluation evaluate_individual(
    const ProblemInstance& inst, Aggregation agg, const Individual& ind, bool repair_active);

} // namespace divsets
