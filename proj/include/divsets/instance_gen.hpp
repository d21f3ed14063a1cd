#pragma once

#include "divsets/graph.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace divsets {

// DIMACS "hamming{bits}-{distance}": vertices are bits-long words, adjacent iff their Hamming
// distance is at least `distance`.
[[nodiscard]] Graph hamming_graph(unsigned bits, unsigned distance);

struct RbInstance {
    // Vertex-cover form: each variable's domain is a clique, each incompatible value pair an edge.
    Graph graph;
    // One vertex per variable, pairwise non-adjacent: an independent set of size `variables`.
    std::vector<Vertex> forced_solution;
};

// Forced-satisfiable Model RB instance with binary constraints (the BHOSLIB construction):
// domain size d, round(-alpha / ln(1 - p) * n * ln n) constraints on random variable pairs,
// each forbidding round(p * d^2) value pairs other than the forced assignment.
[[nodiscard]] RbInstance rb_model_instance(
    unsigned variables, unsigned domain, double tightness, double alpha, std::uint64_t seed);

// Uniform random simple graph with exactly m edges.
[[nodiscard]] Graph gnm_random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

struct GeneratedFile {
    std::filesystem::path path;
    bool written = false; // false: an existing file was kept
};

// Writes hamming6-2 (exact) and stand-ins for frb30-15-1 (forced RB model n=30, d=15, p=0.25,
// alpha=0.8, clique form, opt=30 sidecar) and G1 (G(800, 19176), G-set format) into `dir`.
// Existing files are kept unless `overwrite` is set.
std::vector<GeneratedFile> write_desk_instances(const std::filesystem::path& dir, bool overwrite, std::uint64_t seed = 1);

} // namespace divsets
