#include "divsets/algorithms.hpp"

#include "divsets/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace divsets {

std::string_view to_string(Algorithm alg) noexcept { return alg == Algorithm::Nsga2 ? "nsga2" : "spea2"; }

Algorithm parse_algorithm(std::string_view text)
{
    if (text == "nsga2") {
        return Algorithm::Nsga2;
    }
    if (text == "spea2") {
        return Algorithm::Spea2;
    }
    throw ConfigError("unknown algorithm '" + std::string(text) + "' (expected nsga2 or spea2)");
}

std::uint64_t evaluation_budget(const RunConfig& config, std::size_t n)
{
    if (config.budget_override) {
        return *config.budget_override;
    }
    const double budget = config.budget_multiplier * static_cast<double>(config.set_size) * static_cast<double>(n)
        * static_cast<double>(config.population_size);
    return static_cast<std::uint64_t>(std::llround(budget));
}

namespace {

    double euclidean(const FitnessVector& a, const FitnessVector& b)
    {
        return std::hypot(a.f1 - b.f1, a.f2 - b.f2);
    }

} // namespace

std::vector<double> spea2_fitness(std::span<const FitnessVector> points)
{
    const auto n = points.size();
    std::vector<std::size_t> strength(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (strictly_dominates(points[i], points[j])) {
                ++strength[i];
            }
        }
    }
    const auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    std::vector<double> fitness(n, 0.0);
    std::vector<double> dist;
    for (std::size_t i = 0; i < n; ++i) {
        double raw = 0.0;
        dist.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            if (strictly_dominates(points[j], points[i])) {
                raw += static_cast<double>(strength[j]);
            }
            dist.push_back(euclidean(points[i], points[j]));
        }
        double sigma = 0.0;
        if (k >= 1 && k <= dist.size()) {
            std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
            sigma = dist[k - 1];
        }
        fitness[i] = raw + 1.0 / (sigma + 2.0);
    }
    return fitness;
}

std::vector<std::size_t> spea2_environmental_selection(
    std::span<const FitnessVector> points, std::span<const double> fitness, std::size_t capacity)
{
    const auto n = points.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });

    std::vector<std::size_t> chosen;
    for (auto i : order) {
        if (fitness[i] < 1.0) {
            chosen.push_back(i);
        }
    }
    if (chosen.size() <= capacity) {
        // Fill with the best dominated points.
        for (auto i : order) {
            if (chosen.size() >= capacity) {
                break;
            }
            if (fitness[i] >= 1.0) {
                chosen.push_back(i);
            }
        }
        return chosen;
    }

    std::sort(chosen.begin(), chosen.end());
    const auto m = chosen.size();
    // neighbor[a] holds (distance, b) over the other live points, ascending.
    std::vector<std::vector<std::pair<double, std::size_t>>> neighbor(m);
    for (std::size_t a = 0; a < m; ++a) {
        neighbor[a].reserve(m - 1);
        for (std::size_t b = 0; b < m; ++b) {
            if (a != b) {
                neighbor[a].emplace_back(euclidean(points[chosen[a]], points[chosen[b]]), b);
            }
        }
        std::sort(neighbor[a].begin(), neighbor[a].end());
    }
    std::vector<bool> alive(m, true);
    auto less_crowded = [&](std::size_t a, std::size_t b) {
        // true if a's sorted distance vector is lexicographically smaller than b's
        const auto& da = neighbor[a];
        const auto& db = neighbor[b];
        for (std::size_t t = 0; t < da.size() && t < db.size(); ++t) {
            if (da[t].first != db[t].first) {
                return da[t].first < db[t].first;
            }
        }
        return false;
    };
    for (std::size_t live = m; live > capacity; --live) {
        std::size_t victim = m;
        for (std::size_t a = 0; a < m; ++a) {
            if (alive[a] && (victim == m || less_crowded(a, victim))) {
                victim = a;
            }
        }
        alive[victim] = false;
        for (std::size_t a = 0; a < m; ++a) {
            if (!alive[a]) {
                continue;
            }
            auto& list = neighbor[a];
            list.erase(std::find_if(list.begin(), list.end(), [&](const auto& e) { return e.second == victim; }));
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < m; ++a) {
        if (alive[a]) {
            out.push_back(chosen[a]);
        }
    }
    return out;
}

namespace {

    std::vector<FitnessVector> fitness_of(std::span<const Individual> pop)
    {
        std::vector<FitnessVector> out;
        out.reserve(pop.size());
        for (const auto& ind : pop) {
            out.push_back(*ind.fitness());
        }
        return out;
    }

    class Runner {
    public:
        Runner(const ProblemInstance& inst, Aggregation agg, const RunConfig& config)
            : inst_(inst), agg_(agg), config_(config), rng_(config.seed),
              n_(inst.graph.vertex_count()), chi_(config.chi_numerator / static_cast<double>(n_)),
              budget_(evaluation_budget(config, n_))
        {
            if (config.set_size == 0 || config.population_size == 0) {
                throw ConfigError("r and N must be at least 1");
            }
            if (!(config.crossover_rate >= 0.0 && config.crossover_rate <= 1.0)) {
                throw ConfigError("crossover rate must lie in [0, 1]");
            }
            if (!(chi_ >= 0.0 && chi_ <= 1.0)) {
                throw ConfigError("mutation probability chi/n must lie in [0, 1]");
            }
            if (config.repair && inst.kind != ProblemKind::MinVertexCover) {
                throw ConfigError("repair is only defined for min vertex cover");
            }
            if (budget_ < config.population_size) {
                throw ConfigError("evaluation budget is smaller than the initial population");
            }
        }

        RunResult execute()
        {
            auto pop = initial_population();
            RunResult result;
            result.budget = budget_;
            if (config_.algorithm == Algorithm::Nsga2) {
                result.archive = nsga2(std::move(pop), result.generations);
            } else {
                result.archive = spea2(std::move(pop), result.generations);
            }
            result.evaluations = evaluations_;
            return result;
        }

    private:
        void evaluate(Individual& ind)
        {
            if (!ind.fitness()) {
                const auto e = evaluate_individual(inst_, agg_, ind, config_.repair);
                ind.set_evaluation(e.fitness, e.violation);
            }
            ++evaluations_;
        }

        std::vector<Individual> initial_population()
        {
            std::vector<Individual> pop;
            pop.reserve(config_.population_size);
            for (std::size_t p = 0; p < config_.population_size; ++p) {
                std::vector<Solution> sols(config_.set_size, BitVec(n_));
                for (auto& s : sols) {
                    auto words = s.words();
                    for (std::size_t w = 0; w < words.size(); ++w) {
                        words[w] = rng_() & s.tail_mask(w);
                    }
                }
                auto ind = encode(sols);
                if (config_.repair) {
                    repair_individual(inst_, ind, rng_);
                }
                evaluate(ind);
                pop.push_back(std::move(ind));
            }
            return pop;
        }

        Individual mutate(Individual ind)
        {
            if (inst_.kind == ProblemKind::MaxCoverage && config_.biased_mutation) {
                const auto report = violations(inst_, ind);
                ind = coverage_biased_mutation(std::move(ind), chi_, report, rng_);
            } else {
                ind = standard_bit_mutation(std::move(ind), chi_, rng_);
            }
            if (config_.repair) {
                repair_individual(inst_, ind, rng_);
            }
            return ind;
        }

        template <typename Compare>
        std::vector<Individual> offspring(std::span<const Individual> parents, Compare&& compare)
        {
            const auto count = std::min<std::uint64_t>(config_.population_size, budget_ - evaluations_);
            std::vector<Individual> out;
            out.reserve(count);
            while (out.size() < count) {
                const auto a = binary_tournament(parents.size(), compare, rng_);
                const auto b = binary_tournament(parents.size(), compare, rng_);
                auto [c1, c2] = uniform_crossover(parents[a], parents[b], config_.crossover_rate, rng_);
                for (auto* child : {&c1, &c2}) {
                    if (out.size() == count) {
                        break;
                    }
                    auto mutated = mutate(std::move(*child));
                    evaluate(mutated);
                    out.push_back(std::move(mutated));
                }
            }
            return out;
        }

        void observe(std::span<const Individual> pop) const
        {
            if (config_.observer) {
                config_.observer(evaluations_, pop);
            }
        }

        std::vector<Individual> nsga2(std::vector<Individual> pop, std::uint64_t& generations)
        {
            auto fit = fitness_of(pop);
            std::vector<std::size_t> rank(pop.size(), 0);
            std::vector<double> crowd(pop.size(), 0.0);
            assign_rank_and_crowding(fit, rank, crowd);

            while (evaluations_ < budget_) {
                auto compare = [&](std::size_t i, std::size_t j) {
                    if (rank[i] != rank[j]) {
                        return rank[i] < rank[j] ? -1 : 1;
                    }
                    if (crowd[i] != crowd[j]) {
                        return crowd[i] > crowd[j] ? -1 : 1;
                    }
                    return 0;
                };
                auto kids = offspring(pop, compare);
                for (auto& k : kids) {
                    pop.push_back(std::move(k));
                }

                fit = fitness_of(pop);
                const auto fronts = fast_nondominated_sort(fit);
                std::vector<Individual> next;
                std::vector<std::size_t> next_rank;
                std::vector<double> next_crowd;
                for (std::size_t f = 0; f < fronts.size() && next.size() < config_.population_size; ++f) {
                    const auto& front = fronts[f];
                    std::vector<FitnessVector> ffit;
                    for (auto i : front) {
                        ffit.push_back(fit[i]);
                    }
                    const auto cd = crowding_distance(ffit);
                    std::vector<std::size_t> order(front.size());
                    std::iota(order.begin(), order.end(), std::size_t{0});
                    if (next.size() + front.size() > config_.population_size) {
                        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
                        order.resize(config_.population_size - next.size());
                    }
                    for (auto k : order) {
                        next.push_back(std::move(pop[front[k]]));
                        next_rank.push_back(f);
                        next_crowd.push_back(cd[k]);
                    }
                }
                pop = std::move(next);
                rank = std::move(next_rank);
                crowd = std::move(next_crowd);
                ++generations;
                observe(pop);
            }
            return final_archive(pop);
        }

        static void assign_rank_and_crowding(
            const std::vector<FitnessVector>& fit, std::vector<std::size_t>& rank, std::vector<double>& crowd)
        {
            const auto fronts = fast_nondominated_sort(fit);
            for (std::size_t f = 0; f < fronts.size(); ++f) {
                std::vector<FitnessVector> ffit;
                for (auto i : fronts[f]) {
                    ffit.push_back(fit[i]);
                }
                const auto cd = crowding_distance(ffit);
                for (std::size_t k = 0; k < fronts[f].size(); ++k) {
                    rank[fronts[f][k]] = f;
                    crowd[fronts[f][k]] = cd[k];
                }
            }
        }

        std::vector<Individual> spea2(std::vector<Individual> pop, std::uint64_t& generations)
        {
            std::vector<Individual> archive;
            while (true) {
                std::vector<Individual> pool;
                pool.reserve(pop.size() + archive.size());
                for (auto& ind : pop) {
                    pool.push_back(std::move(ind));
                }
                for (auto& ind : archive) {
                    pool.push_back(std::move(ind));
                }
                const auto fit = fitness_of(pool);
                const auto score = spea2_fitness(fit);
                const auto keep = spea2_environmental_selection(fit, score, config_.population_size);
                archive.clear();
                std::vector<double> archive_score;
                for (auto i : keep) {
                    archive.push_back(std::move(pool[i]));
                    archive_score.push_back(score[i]);
                }
                if (generations > 0) {
                    observe(archive);
                }
                if (evaluations_ >= budget_) {
                    break;
                }
                auto compare = [&](std::size_t i, std::size_t j) {
                    if (archive_score[i] != archive_score[j]) {
                        return archive_score[i] < archive_score[j] ? -1 : 1;
                    }
                    return 0;
                };
                pop = offspring(archive, compare);
                ++generations;
            }
            return final_archive(archive);
        }

        static std::vector<Individual> final_archive(std::vector<Individual>& pop)
        {
            const auto fit = fitness_of(pop);
            std::vector<Individual> out;
            for (auto i : nondominated_indices(fit)) {
                out.push_back(std::move(pop[i]));
            }
            return out;
        }

        const ProblemInstance& inst_;
        Aggregation agg_;
        const RunConfig& config_;
        Rng rng_;
        std::size_t n_;
        double chi_;
        std::uint64_t budget_;
        std::uint64_t evaluations_ = 0;
    };

} // namespace

RunResult run(const ProblemInstance& inst, Aggregation agg, const RunConfig& config)
{
    validate(inst);
    return Runner(inst, agg, config).execute();
}

} // namespace divsets
