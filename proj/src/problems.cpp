#include "divsets/problems.hpp"

#include "divsets/diversity.hpp"
#include "divsets/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

namespace divsets {

std::string_view to_string(ProblemKind kind) noexcept
{
    switch (kind) {
    case ProblemKind::MaxCut:
        return "maxcut";
    case ProblemKind::MaxCoverage:
        return "maxcoverage";
    case ProblemKind::MinVertexCover:
        return "minvertexcover";
    }
    return "?";
}

std::string_view to_string(Aggregation agg) noexcept { return agg == Aggregation::Min ? "min" : "avg"; }

ProblemKind parse_problem_kind(std::string_view text)
{
    if (text == "maxcut") {
        return ProblemKind::MaxCut;
    }
    if (text == "maxcoverage" || text == "coverage") {
        return ProblemKind::MaxCoverage;
    }
    if (text == "minvertexcover" || text == "mvc") {
        return ProblemKind::MinVertexCover;
    }
    throw ConfigError("unknown problem '" + std::string(text) + "' (expected maxcut, maxcoverage or minvertexcover)");
}

Aggregation parse_aggregation(std::string_view text)
{
    if (text == "min") {
        return Aggregation::Min;
    }
    if (text == "avg") {
        return Aggregation::Avg;
    }
    throw ConfigError("unknown aggregation '" + std::string(text) + "' (expected min or avg)");
}

std::size_t ProblemInstance::diversity_columns() const noexcept
{
    return kind == ProblemKind::MaxCut ? graph.edge_count() : graph.vertex_count();
}

std::optional<std::int64_t> ProblemInstance::bound_cardinality() const noexcept
{
    switch (kind) {
    case ProblemKind::MaxCut:
        // Any maximum cut has at least |E|/2 edges, past which the bound saturates; a
        // missing OPT therefore costs nothing.
        return known_opt ? static_cast<std::int64_t>(*known_opt) : static_cast<std::int64_t>(graph.edge_count());
    case ProblemKind::MaxCoverage:
        return coverage_budget;
    case ProblemKind::MinVertexCover:
        if (known_opt) {
            return static_cast<std::int64_t>(*known_opt);
        }
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<std::int64_t> ProblemInstance::diversity_upper_bound(std::int64_t r) const
{
    const auto cap = bound_cardinality();
    if (!cap || diversity_columns() == 0) {
        return std::nullopt;
    }
    return diversity_bound(static_cast<std::int64_t>(diversity_columns()), *cap, r);
}

std::int64_t ProblemInstance::penalty_weight(std::int64_t r) const noexcept
{
    switch (kind) {
    case ProblemKind::MaxCut:
        return 0;
    case ProblemKind::MaxCoverage:
        return r * static_cast<std::int64_t>(graph.vertex_count());
    case ProblemKind::MinVertexCover:
        return r * static_cast<std::int64_t>(graph.edge_count());
    }
    return 0;
}

bool penalty_exceeds_diversity(const ProblemInstance& inst, std::int64_t r)
{
    const auto columns = static_cast<std::int64_t>(inst.diversity_columns());
    return inst.penalty_weight(r) > diversity_bound(columns, columns, r);
}

void validate(const ProblemInstance& inst)
{
    if (inst.kind == ProblemKind::MaxCoverage && (!inst.coverage_budget || *inst.coverage_budget < 0)) {
        throw ConfigError("max coverage instance '" + inst.name + "' needs a non-negative threshold B");
    }
    if (inst.graph.vertex_count() == 0) {
        throw ConfigError("instance '" + inst.name + "' has no vertices");
    }
}

std::int64_t maxcut_objective(const Graph& g, const Solution& x)
{
    return static_cast<std::int64_t>(maxcut_cut_indicator(g, x).count());
}

BitVec maxcut_cut_indicator(const Graph& g, const Solution& x)
{
    BitVec cut(g.edge_count());
    const auto edges = g.edges();
    const auto bits = x.words();
    auto out = cut.words();
    auto bit = [&](Vertex v) { return (bits[v / BitVec::word_bits] >> (v % BitVec::word_bits)) & 1U; };
    for (std::size_t base = 0; base < edges.size(); base += BitVec::word_bits) {
        const auto end = std::min(edges.size(), base + BitVec::word_bits);
        BitVec::Word word = 0;
        for (std::size_t id = base; id < end; ++id) {
            word |= static_cast<BitVec::Word>(bit(edges[id].u) ^ bit(edges[id].v)) << (id - base);
        }
        out[base / BitVec::word_bits] = word;
    }
    return cut;
}

MaxCutSetValues maxcut_set_values(const Graph& g, std::span<const Solution> set)
{
    const auto r = set.size();
    MaxCutSetValues out;
    if (r > 64) {
        std::vector<BitVec> indicators;
        for (const auto& x : set) {
            indicators.push_back(maxcut_cut_indicator(g, x));
            out.cuts.push_back(static_cast<std::int64_t>(indicators.back().count()));
        }
        out.edge_diversity = distance_sum_pairwise(indicators);
        return out;
    }
    // Column j of the set as an r-bit mask: bit i is x_i[j].
    std::vector<std::uint64_t> member(g.vertex_count(), 0);
    for (std::size_t i = 0; i < r; ++i) {
        for (auto v : set[i].ones()) {
            member[v] |= std::uint64_t{1} << i;
        }
    }
    // Byte b spread to one bit per byte lane, so eight per-solution counters share a word.
    static const auto spread = [] {
        std::array<std::uint64_t, 256> table{};
        for (std::size_t b = 0; b < 256; ++b) {
            for (std::size_t k = 0; k < 8; ++k) {
                table[b] |= static_cast<std::uint64_t>((b >> k) & 1U) << (8 * k);
            }
        }
        return table;
    }();

    const auto chunks = (r + 7) / 8;
    out.cuts.assign(r, 0);
    const auto ri = static_cast<std::int64_t>(r);
    const auto edges = g.edges();
    // Byte lanes overflow after 255 additions.
    std::array<std::uint64_t, 255> cut_sets{};
    for (std::size_t base = 0; base < edges.size(); base += cut_sets.size()) {
        const auto len = std::min(cut_sets.size(), edges.size() - base);
        std::int64_t diversity = 0;
        for (std::size_t i = 0; i < len; ++i) {
            const auto& e = edges[base + i];
            cut_sets[i] = member[e.u] ^ member[e.v];
            const auto c = static_cast<std::int64_t>(std::popcount(cut_sets[i]));
            diversity += c * (ri - c);
        }
        out.edge_diversity += diversity;
        for (std::size_t k = 0; k < chunks; ++k) {
            std::uint64_t lanes = 0;
            for (std::size_t i = 0; i < len; ++i) {
                lanes += spread[(cut_sets[i] >> (8 * k)) & 0xFFU];
            }
            for (std::size_t lane = 0; lane < 8 && 8 * k + lane < r; ++lane) {
                out.cuts[8 * k + lane] += static_cast<std::int64_t>((lanes >> (8 * lane)) & 0xFFU);
            }
        }
    }
    return out;
}

std::int64_t maxcoverage_objective(const Graph& g, const Solution& x)
{
    BitVec covered = x;
    for (auto v : x.ones()) {
        covered |= g.adjacency(static_cast<Vertex>(v));
    }
    return static_cast<std::int64_t>(covered.count());
}

std::int64_t maxcoverage_violation(const Solution& x, std::int64_t budget)
{
    return std::max<std::int64_t>(static_cast<std::int64_t>(x.count()) - budget, 0);
}

Individual coverage_biased_mutation(Individual ind, double chi, const ViolationReport& violations, Rng& rng)
{
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw InvalidInput("mutation probability must lie in [0, 1]");
    }
    if (violations.per_solution.size() != ind.set_size()) {
        throw InvalidInput("violation report does not match the individual's set size");
    }
    const auto n = ind.solution_length();
    std::vector<std::size_t> flips;
    for (std::size_t i = 0; i < ind.set_size(); ++i) {
        const auto& x = ind.solution(i);
        const double p_one = std::min(1.0, chi * static_cast<double>(violations.per_solution[i] + 1));
        flips.clear();
        for_each_bernoulli(n, chi, rng, [&](std::size_t j) {
            if (!x.test(j)) {
                flips.push_back(j);
            }
        });
        for (auto j : x.ones()) {
            if (coin(rng, p_one)) {
                flips.push_back(j);
            }
        }
        if (!flips.empty()) {
            auto& target = ind.mutable_solution(i);
            for (auto j : flips) {
                target.flip(j);
            }
        }
    }
    return ind;
}

std::int64_t mvc_objective(const Graph& g, const Solution& x)
{
    return static_cast<std::int64_t>(g.vertex_count() - x.count());
}

std::int64_t mvc_violation(const Graph& g, const Solution& x)
{
    // Each uncovered edge is seen from both of its endpoints.
    std::int64_t twice = 0;
    BitVec open(g.vertex_count());
    for (auto z : x.zeros()) {
        open = g.adjacency(static_cast<Vertex>(z));
        open.subtract(x);
        twice += static_cast<std::int64_t>(open.count());
    }
    return twice / 2;
}

void mvc_repair(const Graph& g, Solution& x, Rng& rng)
{
    // Phase 1: 0-bits in random order; select if incident to an uncovered edge.
    auto zeros = x.zeros();
    std::shuffle(zeros.begin(), zeros.end(), rng);
    for (auto z : zeros) {
        if (g.adjacency(static_cast<Vertex>(z)).intersects_complement_of(x)) {
            x.set(z);
        }
    }

    // Phase 2: 1-bits in random order; drop if no neighbor is outside the cover. A 1-bit adjacent
    // to an unselected vertex now stays blocked (the unselected set only grows), so only the
    // unblocked ones are visited. Restricting a uniform order to a subset keeps it uniform.
    BitVec blocked(g.vertex_count());
    for (auto z : x.zeros()) {
        blocked |= g.adjacency(static_cast<Vertex>(z));
    }
    BitVec candidates = x;
    candidates.subtract(blocked);
    auto order = candidates.ones();
    std::shuffle(order.begin(), order.end(), rng);
    for (auto v : order) {
        if (!g.adjacency(static_cast<Vertex>(v)).intersects_complement_of(x)) {
            x.reset(v);
        }
    }
}

namespace {

    std::int64_t solution_violation(const ProblemInstance& inst, const Solution& x)
    {
        switch (inst.kind) {
        case ProblemKind::MaxCut:
            return 0;
        case ProblemKind::MaxCoverage:
            return maxcoverage_violation(x, *inst.coverage_budget);
        case ProblemKind::MinVertexCover:
            return mvc_violation(inst.graph, x);
        }
        return 0;
    }

    std::int64_t solution_objective(const ProblemInstance& inst, const Solution& x)
    {
        switch (inst.kind) {
        case ProblemKind::MaxCut:
            return maxcut_objective(inst.graph, x);
        case ProblemKind::MaxCoverage:
            return maxcoverage_objective(inst.graph, x);
        case ProblemKind::MinVertexCover:
            return mvc_objective(inst.graph, x);
        }
        return 0;
    }

    std::int64_t vertex_space_diversity(const Individual& ind)
    {
        if (const auto& cc = ind.column_counts()) {
            return distance_sum(*cc);
        }
        return distance_sum_pairwise(ind.solutions());
    }

} // namespace

ViolationReport violations(const ProblemInstance& inst, const Individual& ind)
{
    ViolationReport report;
    report.per_solution.reserve(ind.set_size());
    for (const auto& x : ind.solutions()) {
        report.per_solution.push_back(solution_violation(inst, x));
        report.total += report.per_solution.back();
    }
    return report;
}

std::size_t repair_individual(const ProblemInstance& inst, Individual& ind, Rng& rng)
{
    if (inst.kind != ProblemKind::MinVertexCover) {
        throw ConfigError("repair is only defined for min vertex cover");
    }
    std::size_t repaired = 0;
    for (std::size_t i = 0; i < ind.set_size(); ++i) {
        if (mvc_violation(inst.graph, ind.solution(i)) > 0) {
            mvc_repair(inst.graph, ind.mutable_solution(i), rng);
            ++repaired;
        }
    }
    return repaired;
}

Evaluation evaluate_individual(const ProblemInstance& inst, Aggregation agg, const Individual& ind, bool repair_active)
{
    if (repair_active && inst.kind != ProblemKind::MinVertexCover) {
        throw ConfigError("repair is only defined for min vertex cover");
    }
    const auto r = static_cast<std::int64_t>(ind.set_size());
    if (r == 0 || ind.solution_length() != inst.graph.vertex_count()) {
        throw InvalidInput("individual does not match the instance's vertex count");
    }

    if (inst.kind == ProblemKind::MaxCut) {
        const auto values = maxcut_set_values(inst.graph, ind.solutions());
        std::int64_t lo = std::numeric_limits<std::int64_t>::max();
        std::int64_t sum = 0;
        for (auto f : values.cuts) {
            lo = std::min(lo, f);
            sum += f;
        }
        const double f1 = agg == Aggregation::Min ? static_cast<double>(lo) : static_cast<double>(sum) / static_cast<double>(r);
        return {{f1, static_cast<double>(values.edge_diversity)}, 0};
    }

    std::int64_t total_violation = 0;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t feasible_sum = 0;
    for (const auto& x : ind.solutions()) {
        const auto f = solution_objective(inst, x);
        const auto c = repair_active ? 0 : solution_violation(inst, x);
        total_violation += c;
        lo = std::min(lo, f);
        if (c == 0) {
            feasible_sum += f;
        }
    }
    double f1 = 0.0;
    if (agg == Aggregation::Min) {
        f1 = total_violation == 0 ? static_cast<double>(lo) : -static_cast<double>(total_violation);
    } else {
        f1 = static_cast<double>(feasible_sum) / static_cast<double>(r) - static_cast<double>(total_violation);
    }
    const auto f2 = vertex_space_diversity(ind) - inst.penalty_weight(r) * total_violation;
    return {{f1, static_cast<double>(f2)}, total_violation};
}

} // namespace divsets
