#include "divsets/encoding.hpp"

#include "divsets/error.hpp"

#include <algorithm>

namespace divsets {

BitVec Individual::genome() const
{
    BitVec g(genome_length());
    for (std::size_t i = 0; i < solutions_.size(); ++i) {
        for (auto j : solutions_[i].ones()) {
            g.set(i * n_ + j);
        }
    }
    return g;
}

const ColumnCounts& Individual::ensure_column_counts()
{
    if (!counts_) {
        counts_ = ColumnCounts::from_rows(solutions_);
    }
    return *counts_;
}

bool Individual::audit_column_counts() const
{
    return !counts_ || *counts_ == ColumnCounts::from_rows(solutions_);
}

Individual encode(std::span<const Solution> solutions)
{
    if (solutions.empty()) {
        throw InvalidInput("an individual needs at least one solution");
    }
    const auto n = solutions.front().size();
    for (const auto& s : solutions) {
        if (s.size() != n) {
            throw InvalidInput("solutions of one individual must have identical length");
        }
    }
    Individual ind;
    ind.n_ = n;
    ind.solutions_.assign(solutions.begin(), solutions.end());
    return ind;
}

std::vector<Solution> decode(const Individual& ind)
{
    return {ind.solutions().begin(), ind.solutions().end()};
}

std::vector<Solution> decode_genome(const BitVec& genome, std::size_t n)
{
    if (n == 0 || genome.size() % n != 0) {
        throw InvalidInput("genome length is not a multiple of the solution length");
    }
    std::vector<Solution> out(genome.size() / n, BitVec(n));
    for (auto p : genome.ones()) {
        out[p / n].set(p % n);
    }
    return out;
}

Individual standard_bit_mutation(Individual ind, double chi, Rng& rng)
{
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw InvalidInput("mutation probability must lie in [0, 1]");
    }
    const auto n = ind.n_;
    std::vector<ColumnFlip> flips;
    bool changed = false;
    for_each_bernoulli(ind.genome_length(), chi, rng, [&](std::size_t pos) {
        auto& sol = ind.solutions_[pos / n];
        const auto col = pos % n;
        if (ind.counts_) {
            flips.push_back({col, sol.test(col)});
        }
        sol.flip(col);
        changed = true;
    });
    if (!changed) {
        return ind;
    }
    ind.fitness_.reset();
    ind.violation_.reset();
    if (ind.counts_) {
        apply_flips(*ind.counts_, flips);
    }
    return ind;
}

Individual shuffle_solutions(Individual ind, Rng& rng)
{
    std::shuffle(ind.solutions_.begin(), ind.solutions_.end(), rng);
    return ind;
}

std::pair<Individual, Individual> uniform_crossover(const Individual& a, const Individual& b, double rate, Rng& rng)
{
    if (a.genome_length() != b.genome_length() || a.n_ != b.n_) {
        throw InvalidInput("crossover parents must have equal genome layout");
    }
    if (!coin(rng, rate)) {
        return {a, b};
    }
    Individual x = a;
    Individual y = shuffle_solutions(b, rng);
    x.invalidate();
    y.invalidate();
    for (std::size_t i = 0; i < x.solutions_.size(); ++i) {
        auto wx = x.solutions_[i].words();
        auto wy = y.solutions_[i].words();
        for (std::size_t w = 0; w < wx.size(); ++w) {
            const auto swap = (wx[w] ^ wy[w]) & rng() & x.solutions_[i].tail_mask(w);
            wx[w] ^= swap;
            wy[w] ^= swap;
        }
    }
    return {std::move(x), std::move(y)};
}

} // namespace divsets
