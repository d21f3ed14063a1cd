#include "divsets/graph.hpp"

#include "divsets/error.hpp"

#include <algorithm>
#include <string>

namespace divsets {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges))
{
    for (auto& e : edges_) {
        if (e.u == e.v) {
            throw InvalidInput("self-loop on vertex " + std::to_string(e.u));
        }
        if (e.u >= n_ || e.v >= n_) {
            throw InvalidInput("edge endpoint out of range");
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw InvalidInput("duplicate edge");
    }

    std::vector<std::size_t> degree(n_, 0);
    for (const auto& e : edges_) {
        ++degree[e.u];
        ++degree[e.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) {
        offsets_[v + 1] = offsets_[v] + degree[v];
    }
    neighbors_.resize(2 * edges_.size());
    incident_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Edges are sorted by (u, v), so each neighbor list comes out ascending.
    for (std::size_t id = 0; id < edges_.size(); ++id) {
        const auto [u, v] = edges_[id];
        neighbors_[fill[v]] = u;
        incident_[fill[v]++] = static_cast<std::uint32_t>(id);
    }
    for (std::size_t id = 0; id < edges_.size(); ++id) {
        const auto [u, v] = edges_[id];
        neighbors_[fill[u]] = v;
        incident_[fill[u]++] = static_cast<std::uint32_t>(id);
    }

    adjacency_.assign(n_, BitVec(n_));
    for (const auto& e : edges_) {
        adjacency_[e.u].set(e.v);
        adjacency_[e.v].set(e.u);
    }
}

std::optional<std::size_t> Graph::edge_id(Vertex u, Vertex v) const noexcept
{
    if (u >= n_ || v >= n_ || u == v) {
        return std::nullopt;
    }
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) {
        return std::nullopt;
    }
    return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

} // namespace divsets
