#include "divsets/harness.hpp"

#include "divsets/dominance.hpp"
#include "divsets/error.hpp"
#include "divsets/instance_io.hpp"

#include <fmt/core.h>
#include <fmt/os.h>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <tuple>

namespace divsets {

void validate(const ExperimentConfig& config)
{
    if (config.instance.empty()) {
        throw ConfigError("no instance given");
    }
    if (config.r < 1 || config.population_size < 1 || config.runs < 1) {
        throw ConfigError("r, N and runs must be at least 1");
    }
    if (!(config.crossover_rate >= 0.0 && config.crossover_rate <= 1.0)) {
        throw ConfigError("crossover rate must lie in [0, 1]");
    }
    if (!(config.chi_numerator >= 0.0)) {
        throw ConfigError("mutation strength must be non-negative");
    }
    if (!(config.budget_multiplier > 0.0)) {
        throw ConfigError("budget multiplier must be positive");
    }
    if (config.algorithms.empty()) {
        throw ConfigError("no algorithm selected");
    }
    if (config.repair && config.problem != ProblemKind::MinVertexCover) {
        throw ConfigError("repair is only defined for min vertex cover");
    }
}

std::vector<RunConfig> expand_runs(const ExperimentConfig& config)
{
    std::vector<RunConfig> out;
    for (auto alg : config.algorithms) {
        for (std::size_t i = 0; i < config.runs; ++i) {
            RunConfig rc;
            rc.algorithm = alg;
            rc.set_size = config.r;
            rc.population_size = config.population_size;
            rc.crossover_rate = config.crossover_rate;
            rc.chi_numerator = config.chi_numerator;
            rc.budget_multiplier = config.budget_multiplier;
            rc.budget_override = config.budget;
            rc.repair = config.repair;
            rc.biased_mutation = config.biased_mutation;
            rc.seed = config.base_seed + i;
            out.push_back(std::move(rc));
        }
    }
    return out;
}

std::vector<RunResult> run_batch_serial(const ProblemInstance& inst, Aggregation agg, const std::vector<RunConfig>& configs)
{
    std::vector<RunResult> out;
    out.reserve(configs.size());
    for (const auto& c : configs) {
        out.push_back(run(inst, agg, c));
    }
    return out;
}

std::vector<RunResult> run_batch(
    const ProblemInstance& inst, Aggregation agg, const std::vector<RunConfig>& configs, std::size_t jobs)
{
    const int threads = jobs == 0 ? omp_get_max_threads() : static_cast<int>(jobs);
    std::vector<RunResult> out(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());
    const auto count = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = run(inst, agg, configs[static_cast<std::size_t>(i)]);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

std::string archive_file_name(const ArchiveMetadata& meta)
{
    return fmt::format("{}_{}_r{}_{}_{}_s{}.json", meta.instance, to_string(meta.problem), meta.r, to_string(meta.aggregation),
        to_string(meta.algorithm), meta.seed);
}

namespace {

    struct TraceRow {
        std::uint64_t evaluations;
        std::size_t front_size;
        double best_f1;
        double best_f2;
        double hypervolume;
    };

    void ensure_dir(const std::filesystem::path& dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec || !std::filesystem::is_directory(dir)) {
            throw IoError("cannot create output directory " + dir.string());
        }
    }

    void write_text(const std::filesystem::path& path, const std::string& text)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text)) {
            throw IoError("cannot write " + path.string());
        }
    }

    std::string csv_number(double v)
    {
        if (std::isnan(v)) {
            return "nan";
        }
        return fmt::format("{}", v);
    }

} // namespace

std::vector<std::filesystem::path> cmd_run(const ExperimentConfig& config)
{
    validate(config);
    const auto dir = config.instance_dir.empty() ? default_instance_dir() : config.instance_dir;
    const auto inst = resolve_instance(config.instance, config.problem, dir);
    return cmd_run(config, inst);
}

std::vector<std::filesystem::path> cmd_run(const ExperimentConfig& config, const ProblemInstance& inst)
{
    validate(config);
    if (inst.kind != config.problem) {
        throw ConfigError("instance was loaded for a different problem");
    }
    ensure_dir(config.output_dir);
    if (inst.kind != ProblemKind::MaxCut && !config.repair && !penalty_exceeds_diversity(inst, static_cast<std::int64_t>(config.r))) {
        std::cerr << "warning: with r=" << config.r << " the violation penalty on " << inst.name
                  << " does not separate every infeasible individual from the feasible ones in f2\n";
    }

    auto configs = expand_runs(config);
    const auto r = static_cast<std::int64_t>(config.r);
    const auto bound = inst.diversity_upper_bound(r);
    std::optional<NormalizationFrame> frame;
    if (bound && inst.known_opt) {
        frame = extreme_frame(*inst.known_opt, static_cast<double>(*bound));
    }
    std::vector<std::vector<TraceRow>> traces(configs.size());
    if (config.trace_interval > 0) {
        for (std::size_t i = 0; i < configs.size(); ++i) {
            configs[i].observer = [&trace = traces[i], &frame, every = config.trace_interval, generation = std::uint64_t{0}](
                                      std::uint64_t evaluations, std::span<const Individual> pop) mutable {
                if (++generation % every != 0) {
                    return;
                }
                std::vector<FitnessVector> fit;
                for (const auto& ind : pop) {
                    if (ind.violation().value_or(0) == 0) {
                        fit.push_back(*ind.fitness());
                    }
                }
                const auto front = nondominated_filter(fit);
                TraceRow row{evaluations, front.size(), std::nan(""), std::nan(""), std::nan("")};
                for (const auto& p : front) {
                    row.best_f1 = std::isnan(row.best_f1) ? p.f1 : std::max(row.best_f1, p.f1);
                    row.best_f2 = std::isnan(row.best_f2) ? p.f2 : std::max(row.best_f2, p.f2);
                }
                if (frame) {
                    row.hypervolume = hypervolume_2d(frame->normalize(front));
                }
                trace.push_back(row);
            };
        }
    }

    std::vector<double> seconds(configs.size(), 0.0);
    std::vector<RunResult> results(configs.size());
    {
        const int threads = config.jobs == 0 ? omp_get_max_threads() : static_cast<int>(config.jobs);
        std::vector<std::exception_ptr> errors(configs.size());
        const auto count = static_cast<std::ptrdiff_t>(configs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            const auto k = static_cast<std::size_t>(i);
            try {
                const auto start = std::chrono::steady_clock::now();
                results[k] = run(inst, config.aggregation, configs[k]);
                seconds[k] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                const auto archive = make_archive(inst, config.aggregation, configs[k], results[k]);
                save_archive(config.output_dir / archive_file_name(archive.meta), archive);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    std::vector<std::filesystem::path> paths;
    std::string timing = "archive,evaluations,generations,wall_seconds\n";
    for (std::size_t k = 0; k < configs.size(); ++k) {
        const auto meta = make_archive(inst, config.aggregation, configs[k], results[k]).meta;
        const auto name = archive_file_name(meta);
        paths.push_back(config.output_dir / name);
        timing += fmt::format("{},{},{},{:.3f}\n", name, results[k].evaluations, results[k].generations, seconds[k]);
        if (config.trace_interval > 0) {
            std::string csv = "evaluations,front_size,best_f1,best_f2,hypervolume\n";
            for (const auto& t : traces[k]) {
                csv += fmt::format("{},{},{},{},{}\n", t.evaluations, t.front_size, csv_number(t.best_f1),
                    csv_number(t.best_f2), csv_number(t.hypervolume));
            }
            auto trace_name = std::filesystem::path(name).replace_extension(".trace.csv");
            write_text(config.output_dir / trace_name, csv);
        }
    }
    write_text(config.output_dir / "timing.csv", timing);
    return paths;
}

std::vector<ArchiveGroup> group_archives(std::vector<RunArchive> archives)
{
    std::map<std::tuple<std::string, int, std::size_t, int>, ArchiveGroup> groups;
    for (auto& a : archives) {
        const auto& m = a.meta;
        auto key = std::make_tuple(m.instance, static_cast<int>(m.problem), m.r, static_cast<int>(m.aggregation));
        auto& g = groups[key];
        if (g.archives.empty()) {
            g.key = fmt::format("{}_{}_r{}_{}", m.instance, to_string(m.problem), m.r, to_string(m.aggregation));
        } else {
            const auto& ref = g.archives.front().meta;
            if (ref.n != m.n || ref.diversity_columns != m.diversity_columns || ref.known_opt != m.known_opt
                || ref.coverage_budget != m.coverage_budget || ref.diversity_bound != m.diversity_bound) {
                throw ConfigError("archives of group " + g.key + " disagree on instance metadata (seed "
                    + std::to_string(m.seed) + ", " + std::string(to_string(m.algorithm)) + ")");
            }
        }
        g.archives.push_back(std::move(a));
    }
    std::vector<ArchiveGroup> out;
    for (auto& [key, g] : groups) {
        out.push_back(std::move(g));
    }
    return out;
}

GroupFrames build_frames(const ArchiveGroup& group)
{
    GroupFrames frames;
    std::vector<FitnessVector> pooled;
    for (const auto& a : group.archives) {
        const auto feasible = a.feasible_fitness();
        pooled.insert(pooled.end(), feasible.begin(), feasible.end());
    }
    frames.aggregated_reference = nondominated_filter(pooled);
    frames.aggregated = aggregated_frame(frames.aggregated_reference);

    const auto& meta = group.archives.front().meta;
    double f1_hi = 0.0;
    double f2_hi = 0.0;
    for (const auto& p : pooled) {
        f1_hi = std::max(f1_hi, p.f1);
        f2_hi = std::max(f2_hi, p.f2);
    }
    if (meta.known_opt) {
        f1_hi = *meta.known_opt;
    } else {
        frames.opt_observed = true;
    }
    if (meta.diversity_bound) {
        f2_hi = static_cast<double>(*meta.diversity_bound);
    } else if (meta.problem == ProblemKind::MinVertexCover && meta.diversity_columns > 0) {
        // The bound needs OPT as cardinality cap; use the best observed objective instead.
        frames.bound_observed = true;
        f2_hi = static_cast<double>(diversity_bound(static_cast<std::int64_t>(meta.diversity_columns),
            static_cast<std::int64_t>(std::floor(f1_hi)), static_cast<std::int64_t>(meta.r)));
    } else {
        frames.bound_observed = true;
    }
    frames.extreme = extreme_frame(f1_hi, f2_hi);
    return frames;
}

IndicatorTableRow score_group(const ArchiveGroup& group)
{
    IndicatorTableRow row;
    const auto& meta = group.archives.front().meta;
    row.instance = meta.instance;
    row.problem = meta.problem;
    row.r = meta.r;
    row.aggregation = meta.aggregation;
    row.frames = build_frames(group);
    const auto reference = row.frames.aggregated.normalize(row.frames.aggregated_reference);

    std::vector<std::vector<RunIndicators>> per_algorithm;
    for (auto alg : {Algorithm::Nsga2, Algorithm::Spea2}) {
        std::vector<const RunArchive*> runs;
        for (const auto& a : group.archives) {
            if (a.meta.algorithm == alg) {
                runs.push_back(&a);
            }
        }
        if (runs.empty()) {
            continue;
        }
        std::sort(runs.begin(), runs.end(), [](const auto* a, const auto* b) { return a->meta.seed < b->meta.seed; });
        AlgorithmRow ar;
        ar.algorithm = alg;
        for (const auto* a : runs) {
            const auto front = nondominated_filter(a->feasible_fitness());
            ar.runs.push_back(run_indicators(front, row.frames.extreme, row.frames.aggregated, reference, front.size()));
        }
        per_algorithm.push_back(ar.runs);
        row.algorithms.push_back(std::move(ar));
    }
    const auto summary = summarize(per_algorithm);
    for (std::size_t i = 0; i < row.algorithms.size(); ++i) {
        row.algorithms[i].summary = summary.per_algorithm[i];
    }
    // Pair by seed only when both algorithms ran the same seeds.
    bool paired = row.algorithms.size() == 2;
    if (paired) {
        std::vector<std::uint64_t> seeds[2];
        for (int k = 0; k < 2; ++k) {
            for (const auto& a : group.archives) {
                if (a.meta.algorithm == row.algorithms[static_cast<std::size_t>(k)].algorithm) {
                    seeds[k].push_back(a.meta.seed);
                }
            }
            std::sort(seeds[k].begin(), seeds[k].end());
        }
        paired = seeds[0] == seeds[1];
    }
    if (paired) {
        row.significant = summary.significant;
        row.p_values = summary.p_values;
    }
    return row;
}

std::vector<IndicatorTableRow> cmd_indicators(const std::filesystem::path& archive_dir, const std::filesystem::path& out_dir)
{
    std::vector<RunArchive> archives;
    for (const auto& p : list_archives(archive_dir)) {
        archives.push_back(load_archive(p));
    }
    if (archives.empty()) {
        throw IoError("no archives in " + archive_dir.string());
    }
    auto groups = group_archives(std::move(archives));
    ensure_dir(out_dir);
    ensure_dir(out_dir / "fronts");

    std::vector<IndicatorTableRow> rows;
    std::string table = "instance,problem,r,agg,algorithm,runs,IGD+,HV,IGD+*,HV*,count,"
                        "sig_IGD+,sig_HV,sig_IGD+*,sig_HV*,p_IGD+,p_HV,p_IGD+*,p_HV*,opt_source,bound_source\n";
    std::string per_run = "instance,problem,r,agg,algorithm,seed,IGD+,HV,IGD+*,HV*,count\n";
    for (const auto& g : groups) {
        auto row = score_group(g);
        auto p = [&](std::size_t k) { return row.p_values[k] ? csv_number(*row.p_values[k]) : std::string("na"); };
        for (const auto& ar : row.algorithms) {
            const auto& m = ar.summary.median;
            table += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", row.instance,
                to_string(row.problem), row.r, to_string(row.aggregation), to_string(ar.algorithm), ar.summary.runs,
                csv_number(m.igd_plus), csv_number(m.hypervolume), csv_number(m.igd_plus_star),
                csv_number(m.hypervolume_star), csv_number(ar.summary.median_count), int(row.significant[0]),
                int(row.significant[1]), int(row.significant[2]), int(row.significant[3]), p(0), p(1), p(2), p(3),
                row.frames.opt_observed ? "observed" : "known", row.frames.bound_observed ? "observed" : "formula");
            std::vector<std::uint64_t> seeds;
            for (const auto& a : g.archives) {
                if (a.meta.algorithm == ar.algorithm) {
                    seeds.push_back(a.meta.seed);
                }
            }
            std::sort(seeds.begin(), seeds.end());
            for (std::size_t i = 0; i < ar.runs.size(); ++i) {
                const auto& ri = ar.runs[i];
                per_run += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", row.instance, to_string(row.problem), row.r,
                    to_string(row.aggregation), to_string(ar.algorithm), seeds[i], csv_number(ri.igd_plus),
                    csv_number(ri.hypervolume), csv_number(ri.igd_plus_star), csv_number(ri.hypervolume_star), ri.count);
            }
        }
        std::string front = "f1,f2,f1_norm,f2_norm\n";
        for (const auto& pt : row.frames.aggregated_reference) {
            const auto nrm = row.frames.aggregated.normalize(pt);
            front += fmt::format("{},{},{},{}\n", csv_number(pt.f1), csv_number(pt.f2), csv_number(nrm.f1), csv_number(nrm.f2));
        }
        write_text(out_dir / "fronts" / (g.key + ".csv"), front);
        rows.push_back(std::move(row));
    }
    write_text(out_dir / "indicators.csv", table);
    write_text(out_dir / "run_indicators.csv", per_run);
    return rows;
}

std::vector<std::filesystem::path> cmd_plotdata(const std::filesystem::path& archive_dir, const std::filesystem::path& out_dir)
{
    std::vector<RunArchive> archives;
    for (const auto& p : list_archives(archive_dir)) {
        archives.push_back(load_archive(p));
    }
    auto groups = group_archives(std::move(archives));
    ensure_dir(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& g : groups) {
        const auto frames = build_frames(g);
        std::string csv = "algorithm,seed,f1,f2,violation,f1_norm,f2_norm\n";
        for (const auto& a : g.archives) {
            for (const auto& pt : a.points) {
                const auto nrm = frames.extreme.normalize(pt.fitness);
                csv += fmt::format("{},{},{},{},{},{},{}\n", to_string(a.meta.algorithm), a.meta.seed, csv_number(pt.fitness.f1),
                    csv_number(pt.fitness.f2), pt.violation, csv_number(nrm.f1), csv_number(nrm.f2));
            }
        }
        auto path = out_dir / (g.key + ".plot.csv");
        write_text(path, csv);
        written.push_back(path);
    }
    return written;
}

} // namespace divsets
