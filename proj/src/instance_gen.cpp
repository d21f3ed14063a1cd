#include "divsets/instance_gen.hpp"

#include "divsets/error.hpp"
#include "divsets/instance_io.hpp"
#include "divsets/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <set>

namespace divsets {

Graph hamming_graph(unsigned bits, unsigned distance)
{
    if (bits == 0 || bits > 16) {
        throw InvalidInput("hamming graph word length must be in [1, 16]");
    }
    const Vertex n = Vertex{1} << bits;
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (static_cast<unsigned>(std::popcount(u ^ v)) >= distance) {
                edges.push_back({u, v});
            }
        }
    }
    return Graph(n, std::move(edges));
}

RbInstance rb_model_instance(unsigned variables, unsigned domain, double tightness, double alpha, std::uint64_t seed)
{
    if (variables < 2 || domain < 2 || !(tightness > 0.0 && tightness < 1.0)) {
        throw InvalidInput("model RB needs >= 2 variables, domain >= 2 and tightness in (0, 1)");
    }
    Rng rng(seed);
    const auto n = static_cast<double>(variables);
    const auto constraints = static_cast<std::size_t>(std::lround(-alpha / std::log(1.0 - tightness) * n * std::log(n)));
    const auto forbidden = static_cast<std::size_t>(std::lround(tightness * domain * domain));
    if (forbidden >= static_cast<std::size_t>(domain) * domain) {
        throw InvalidInput("model RB tightness leaves no compatible pair");
    }

    auto vertex = [domain](unsigned var, unsigned value) { return static_cast<Vertex>(var * domain + value); };

    RbInstance out;
    std::vector<unsigned> forced(variables);
    for (unsigned var = 0; var < variables; ++var) {
        forced[var] = static_cast<unsigned>(uniform_index(rng, domain));
        out.forced_solution.push_back(vertex(var, forced[var]));
    }

    std::set<Edge> edges;
    for (unsigned var = 0; var < variables; ++var) {
        for (unsigned a = 0; a < domain; ++a) {
            for (unsigned b = a + 1; b < domain; ++b) {
                edges.insert({vertex(var, a), vertex(var, b)});
            }
        }
    }
    for (std::size_t c = 0; c < constraints; ++c) {
        const auto x = static_cast<unsigned>(uniform_index(rng, variables));
        auto y = static_cast<unsigned>(uniform_index(rng, variables - 1));
        y += y >= x ? 1 : 0;
        std::set<std::pair<unsigned, unsigned>> pairs;
        while (pairs.size() < forbidden) {
            const auto a = static_cast<unsigned>(uniform_index(rng, domain));
            const auto b = static_cast<unsigned>(uniform_index(rng, domain));
            if (a == forced[x] && b == forced[y]) {
                continue;
            }
            pairs.insert({a, b});
        }
        for (auto [a, b] : pairs) {
            const auto u = vertex(x, a);
            const auto v = vertex(y, b);
            edges.insert({std::min(u, v), std::max(u, v)});
        }
    }
    out.graph = Graph(static_cast<std::size_t>(variables) * domain, {edges.begin(), edges.end()});
    return out;
}

Graph gnm_random_graph(std::size_t n, std::size_t m, std::uint64_t seed)
{
    if (n < 2 || m > n * (n - 1) / 2) {
        throw InvalidInput("G(n, m) needs n >= 2 and m <= n(n-1)/2");
    }
    Rng rng(seed);
    std::set<Edge> edges;
    while (edges.size() < m) {
        auto u = static_cast<Vertex>(uniform_index(rng, n));
        auto v = static_cast<Vertex>(uniform_index(rng, n));
        if (u == v) {
            continue;
        }
        edges.insert({std::min(u, v), std::max(u, v)});
    }
    return Graph(n, {edges.begin(), edges.end()});
}

namespace {

    GeneratedFile write_file(const std::filesystem::path& path, const std::string& text, bool overwrite)
    {
        if (!overwrite && std::filesystem::exists(path)) {
            return {path, false};
        }
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text)) {
            throw IoError("cannot write " + path.string());
        }
        return {path, true};
    }

} // namespace

std::vector<GeneratedFile> write_desk_instances(const std::filesystem::path& dir, bool overwrite, std::uint64_t seed)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    std::vector<GeneratedFile> out;
    // The complement of hamming6-2 is the 6-cube, whose largest independent sets have 32 vertices.
    out.push_back(write_file(dir / "hamming6-2.clq",
        to_dimacs(hamming_graph(6, 2), "hamming6-2: 6-bit words, adjacent iff at Hamming distance >= 2"), overwrite));
    out.push_back(write_file(dir / "hamming6-2.meta", "opt=32\n", overwrite));

    const auto rb = rb_model_instance(30, 15, 0.25, 0.8, seed);
    out.push_back(write_file(dir / "frb30-15-1.clq",
        to_dimacs(complement(rb.graph), "frb30-15-1 stand-in: forced RB model n=30 d=15 p=0.25 alpha=0.8, clique form"),
        overwrite));
    out.push_back(write_file(dir / "frb30-15-1.meta", "opt=30\n", overwrite));

    out.push_back(write_file(dir / "G1", to_gset(gnm_random_graph(800, 19176, seed)), overwrite));
    return out;
}

} // namespace divsets
