#pragma once

#include "divsets/algorithms.hpp"
#include "divsets/bitvec.hpp"
#include "divsets/problems.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divsets {

inline constexpr std::string_view software_version = "divsets 0.1.0";

struct ArchivePoint {
    FitnessVector fitness;
    std::int64_t violation = 0;
    BitVec genome; // concatenated r*n bits
};

struct ArchiveMetadata {
    std::string instance;
    ProblemKind problem = ProblemKind::MaxCut;
    Algorithm algorithm = Algorithm::Nsga2;
    Aggregation aggregation = Aggregation::Min;
    std::size_t r = 0;
    std::size_t n = 0;
    std::size_t diversity_columns = 0;
    std::size_t population_size = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t generations = 0;
    double crossover_rate = 0.0;
    double chi_numerator = 0.0;
    bool repair = false;
    bool biased_mutation = false;
    std::optional<double> known_opt;
    std::optional<std::int64_t> coverage_budget;
    std::optional<std::int64_t> diversity_bound;
    std::string software = std::string(software_version);

    friend bool operator==(const ArchiveMetadata&, const ArchiveMetadata&) = default;
};

// Final non-dominated individuals of one run plus everything needed to reproduce and score it.
struct RunArchive {
    ArchiveMetadata meta;
    std::vector<ArchivePoint> points;

    [[nodiscard]] std::vector<FitnessVector> fitness() const;
    // Points with C(I) = 0.
    [[nodiscard]] std::vector<FitnessVector> feasible_fitness() const;
};

[[nodiscard]] RunArchive make_archive(
    const ProblemInstance& inst, Aggregation agg, const RunConfig& config, const RunResult& result);

// Hex packing of a bit string: four bits per character, first bit in the high nibble bit.
[[nodiscard]] std::string to_hex(const BitVec& bits);
[[nodiscard]] BitVec from_hex(std::string_view hex, std::size_t nbits);

[[nodiscard]] std::string serialize_archive(const RunArchive& archive);
[[nodiscard]] RunArchive parse_archive(std::string_view json_text);

// Writes through a temporary file and a rename.
void save_archive(const std::filesystem::path& path, const RunArchive& archive);
[[nodiscard]] RunArchive load_archive(const std::filesystem::path& path);
// All *.json archives in a directory, sorted by file name.
[[nodiscard]] std::vector<std::filesystem::path> list_archives(const std::filesystem::path& dir);

} // namespace divsets
