#pragma once

#include "divsets/graph.hpp"
#include "divsets/problems.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace divsets {

// G-set: header "n m", then m lines "u v w" with 1-indexed endpoints and unit weights.
[[nodiscard]] Graph parse_gset(std::string_view text);

struct DimacsGraph {
    Graph graph;
    std::size_t declared_edges = 0;
    std::size_t duplicate_edges = 0; // collapsed "e" lines
};

// DIMACS ascii: "c" comments, one "p edge n m" line, "e u v" lines (1-indexed).
[[nodiscard]] DimacsGraph parse_dimacs(std::string_view text);

[[nodiscard]] Graph complement(const Graph& g);

[[nodiscard]] std::string to_gset(const Graph& g);
[[nodiscard]] std::string to_dimacs(const Graph& g, std::string_view comment = {});

// Reads a graph file, choosing the parser from its first significant line.
[[nodiscard]] Graph load_graph(const std::filesystem::path& path);

// Key=value sidecar next to an instance file: opt=, B=, complement=.
struct InstanceMeta {
    std::optional<double> opt;
    std::optional<std::int64_t> budget;
    std::optional<bool> complement;
};

[[nodiscard]] InstanceMeta parse_meta(std::string_view text);

// Instance directory from DIVSETS_INSTANCE_DIR, or the current directory.
[[nodiscard]] std::filesystem::path default_instance_dir();

// Resolves a catalog name. Max coverage names are "{graphname}-{threshold}" and always use the
// complement graph; min vertex cover complements DIMACS hamming graphs; a sidecar
// "complement=" key overrides both.
[[nodiscard]] ProblemInstance resolve_instance(
    std::string_view name, ProblemKind kind, const std::filesystem::path& instance_dir);

} // namespace divsets
