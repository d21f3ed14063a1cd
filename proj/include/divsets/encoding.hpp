#pragma once

#include "divsets/bitvec.hpp"
#include "divsets/diversity.hpp"
#include "divsets/rng.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace divsets {

// A solution is a vertex subset as an indicator bit string of length n.
using Solution = BitVec;

// Aggregated quality (f1) and diversity (f2), both maximized.
struct FitnessVector {
    double f1 = 0.0;
    double f2 = 0.0;

    [[nodiscard]] bool finite() const noexcept { return std::isfinite(f1) && std::isfinite(f2); }
    friend bool operator==(const FitnessVector&, const FitnessVector&) = default;
};

// A multiset of r solutions, the unit of evolution. Its genome is the concatenation
// x_1 x_2 ... x_r of the solutions' bit strings; solution i occupies bits [i*n, (i+1)*n).
class Individual {
public:
    Individual() = default;

    [[nodiscard]] std::size_t set_size() const noexcept { return solutions_.size(); }
    [[nodiscard]] std::size_t solution_length() const noexcept { return n_; }
    [[nodiscard]] std::size_t genome_length() const noexcept { return n_ * solutions_.size(); }

    [[nodiscard]] const BitVec& solution(std::size_t i) const { return solutions_[i]; }
    [[nodiscard]] std::span<const BitVec> solutions() const noexcept { return solutions_; }

    // Mutable access drops every cache.
    [[nodiscard]] BitVec& mutable_solution(std::size_t i)
    {
        invalidate();
        return solutions_[i];
    }

    [[nodiscard]] bool genome_bit(std::size_t pos) const { return solutions_[pos / n_].test(pos % n_); }
    [[nodiscard]] BitVec genome() const;

    // Vertex-space column counts. Maintained incrementally by mutation when present.
    [[nodiscard]] const std::optional<ColumnCounts>& column_counts() const noexcept { return counts_; }
    const ColumnCounts& ensure_column_counts();
    // Compares the cached counts (if any) against a recount.
    [[nodiscard]] bool audit_column_counts() const;

    [[nodiscard]] const std::optional<FitnessVector>& fitness() const noexcept { return fitness_; }
    [[nodiscard]] const std::optional<std::int64_t>& violation() const noexcept { return violation_; }
    void set_evaluation(FitnessVector f, std::int64_t violation)
    {
        fitness_ = f;
        violation_ = violation;
    }

    void invalidate() noexcept
    {
        counts_.reset();
        fitness_.reset();
        violation_.reset();
    }

private:
    friend Individual encode(std::span<const Solution> solutions);
    friend Individual standard_bit_mutation(Individual ind, double chi, Rng& rng);
    friend Individual shuffle_solutions(Individual ind, Rng& rng);
    friend std::pair<Individual, Individual> uniform_crossover(
        const Individual& a, const Individual& b, double rate, Rng& rng);

    std::vector<BitVec> solutions_;
    std::size_t n_ = 0;
    std::optional<ColumnCounts> counts_;
    std::optional<FitnessVector> fitness_;
    std::optional<std::int64_t> violation_;
};

// Concatenates r equal-length solutions into an individual.
[[nodiscard]] Individual encode(std::span<const Solution> solutions);
[[nodiscard]] std::vector<Solution> decode(const Individual& ind);
// Splits a raw concatenated genome into solutions of length n.
[[nodiscard]] std::vector<Solution> decode_genome(const BitVec& genome, std::size_t n);

// Flips each of the r*n genome bits independently with probability chi.
[[nodiscard]] Individual standard_bit_mutation(Individual ind, double chi, Rng& rng);

// Uniformly random permutation of the solution blocks. Fitness and column counts are
// permutation invariant and survive.
[[nodiscard]] Individual shuffle_solutions(Individual ind, Rng& rng);

// With probability `rate`: shuffles the second parent's solutions, then swaps each genome bit
// between the two offspring with probability 1/2. Otherwise returns copies of the parents.
[[nodiscard]] std::pair<Individual, Individual> uniform_crossover(
    const Individual& a, const Individual& b, double rate, Rng& rng);

} // namespace divsets
