#pragma once

#include "divsets/bitvec.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace divsets {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u;
    Vertex v;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph on vertices [0, n). Edges are stored as (u < v) sorted
// lexicographically; an edge's position in that order is its column id.
class Graph {
public:
    Graph() = default;
    // Throws InvalidInput on self-loops, out-of-range endpoints or duplicate edges.
    Graph(std::size_t n, std::vector<Edge> edges);

    [[nodiscard]] std::size_t vertex_count() const noexcept { return n_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }

    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const noexcept
    {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    // Column ids of the edges incident to v, aligned with neighbors(v).
    [[nodiscard]] std::span<const std::uint32_t> incident_edges(Vertex v) const noexcept
    {
        return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
    }
    [[nodiscard]] std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    // Neighborhood of v as a bit vector over vertices.
    [[nodiscard]] const BitVec& adjacency(Vertex v) const noexcept { return adjacency_[v]; }
    [[nodiscard]] bool adjacent(Vertex u, Vertex v) const noexcept { return adjacency_[u].test(v); }

    [[nodiscard]] std::optional<std::size_t> edge_id(Vertex u, Vertex v) const noexcept;

    friend bool operator==(const Graph& a, const Graph& b) noexcept { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> neighbors_;
    std::vector<std::uint32_t> incident_;
    std::vector<BitVec> adjacency_;
};

} // namespace divsets
