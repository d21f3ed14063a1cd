#pragma once

#include "divsets/algorithms.hpp"
#include "divsets/archive_io.hpp"
#include "divsets/indicators.hpp"
#include "divsets/problems.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace divsets {

struct ExperimentConfig {
    ProblemKind problem = ProblemKind::MaxCut;
    std::string instance;
    std::filesystem::path instance_dir;
    Aggregation aggregation = Aggregation::Min;
    std::size_t r = 10;
    std::size_t population_size = 20;
    double crossover_rate = 0.8;
    double chi_numerator = 0.5;
    double budget_multiplier = 5.0;
    std::optional<std::uint64_t> budget;
    bool repair = false;
    bool biased_mutation = true;
    std::size_t runs = 20;
    std::uint64_t base_seed = 1;
    std::vector<Algorithm> algorithms{Algorithm::Nsga2, Algorithm::Spea2};
    std::filesystem::path output_dir = "archives";
    std::size_t jobs = 0; // 0: available parallelism
    std::size_t trace_interval = 0; // generations between trace rows, 0: off
};

// Throws ConfigError on out-of-range values.
void validate(const ExperimentConfig& config);

// Per-run configuration for each (algorithm, run index) in output order; seed = base + index.
[[nodiscard]] std::vector<RunConfig> expand_runs(const ExperimentConfig& config);

// Runs in sequence. Reference for run_batch.
[[nodiscard]] std::vector<RunResult> run_batch_serial(
    const ProblemInstance& inst, Aggregation agg, const std::vector<RunConfig>& configs);

// Runs on an OpenMP worker pool (jobs = 0: all available threads). Results are in input order
// and identical to run_batch_serial.
[[nodiscard]] std::vector<RunResult> run_batch(
    const ProblemInstance& inst, Aggregation agg, const std::vector<RunConfig>& configs, std::size_t jobs);

[[nodiscard]] std::string archive_file_name(const ArchiveMetadata& meta);

// Resolves the instance, executes every run and writes one archive per run plus timing.csv.
// Returns the archive paths in (algorithm, run index) order.
std::vector<std::filesystem::path> cmd_run(const ExperimentConfig& config);
// Same, for an already loaded instance.
std::vector<std::filesystem::path> cmd_run(const ExperimentConfig& config, const ProblemInstance& inst);

// Archives sharing (instance, problem, r, aggregation).
struct ArchiveGroup {
    std::string key;
    std::vector<RunArchive> archives;
};

// Groups archives; throws ConfigError when one group mixes incompatible instance metadata.
[[nodiscard]] std::vector<ArchiveGroup> group_archives(std::vector<RunArchive> archives);

struct GroupFrames {
    NormalizationFrame extreme;
    NormalizationFrame aggregated;
    std::vector<FitnessVector> aggregated_reference; // raw values
    bool opt_observed = false; // extreme f1 bound taken from the data, not from a known optimum
    bool bound_observed = false; // likewise for the diversity bound
};

[[nodiscard]] GroupFrames build_frames(const ArchiveGroup& group);

struct AlgorithmRow {
    Algorithm algorithm = Algorithm::Nsga2;
    AlgorithmSummary summary;
    std::vector<RunIndicators> runs; // ordered by seed
};

struct IndicatorTableRow {
    std::string instance;
    ProblemKind problem = ProblemKind::MaxCut;
    std::size_t r = 0;
    Aggregation aggregation = Aggregation::Min;
    std::vector<AlgorithmRow> algorithms;
    std::array<bool, 4> significant{};
    std::array<std::optional<double>, 4> p_values{};
    GroupFrames frames;
};

[[nodiscard]] IndicatorTableRow score_group(const ArchiveGroup& group);

// Scores every group found in archive_dir and writes indicators.csv, run_indicators.csv and
// fronts/<group>.csv into out_dir.
std::vector<IndicatorTableRow> cmd_indicators(const std::filesystem::path& archive_dir, const std::filesystem::path& out_dir);

// Writes <group>.plot.csv per group: every run's archive (already non-dominated within the run)
// with raw and extreme-normalized fitness. Returns the files written.
std::vector<std::filesystem::path> cmd_plotdata(const std::filesystem::path& archive_dir, const std::filesystem::path& out_dir);

} // namespace divsets
