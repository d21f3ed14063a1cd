#include "divsets/instance_io.hpp"

#include "divsets/error.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace divsets {

namespace {

    std::vector<std::string_view> split_ws(std::string_view line)
    {
        std::vector<std::string_view> out;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
            }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
                ++j;
            }
            if (j > i) {
                out.push_back(line.substr(i, j - i));
            }
            i = j;
        }
        return out;
    }

    template <typename T>
    T parse_number(std::string_view token, std::size_t line_no)
    {
        T value{};
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": bad token '" + std::string(token) + "'");
        }
        return value;
    }

    // Calls fn(line_no, tokens) for each non-empty line.
    template <typename Fn>
    void for_each_line(std::string_view text, Fn&& fn)
    {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            ++line_no;
            auto tokens = split_ws(text.substr(pos, end - pos));
            if (!tokens.empty()) {
                fn(line_no, tokens);
            }
            pos = end + 1;
        }
    }

    Vertex to_vertex(long long one_based, std::size_t n, std::size_t line_no)
    {
        if (one_based < 1 || static_cast<std::size_t>(one_based) > n) {
            throw ParseError("line " + std::to_string(line_no) + ": vertex " + std::to_string(one_based) + " out of range");
        }
        return static_cast<Vertex>(one_based - 1);
    }

    std::string read_file(const std::filesystem::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw IoError("cannot open " + path.string());
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

} // namespace

Graph parse_gset(std::string_view text)
{
    std::optional<std::size_t> n;
    std::size_t declared = 0;
    std::vector<Edge> edges;
    for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& tok) {
        if (!n) {
            if (tok.size() != 2) {
                throw ParseError("line " + std::to_string(line_no) + ": expected header 'n m'");
            }
            n = parse_number<std::size_t>(tok[0], line_no);
            declared = parse_number<std::size_t>(tok[1], line_no);
            edges.reserve(declared);
            return;
        }
        if (tok.size() != 3) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v w'");
        }
        const auto u = to_vertex(parse_number<long long>(tok[0], line_no), *n, line_no);
        const auto v = to_vertex(parse_number<long long>(tok[1], line_no), *n, line_no);
        if (parse_number<long long>(tok[2], line_no) != 1) {
            throw UnsupportedInstance("line " + std::to_string(line_no) + ": only unit edge weights are supported");
        }
        if (u == v) {
            throw ParseError("line " + std::to_string(line_no) + ": self-loop");
        }
        edges.push_back({std::min(u, v), std::max(u, v)});
    });
    if (!n) {
        throw ParseError("empty G-set file");
    }
    if (edges.size() != declared) {
        throw ParseError("header declares " + std::to_string(declared) + " edges but " + std::to_string(edges.size())
            + " were read");
    }
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParseError("duplicate edge in G-set file");
    }
    return Graph(*n, std::move(sorted));
}

DimacsGraph parse_dimacs(std::string_view text)
{
    std::optional<std::size_t> n;
    std::size_t declared = 0;
    std::vector<Edge> edges;
    std::size_t self_loops = 0;
    for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& tok) {
        const auto kind = tok[0];
        if (kind == "c") {
            return;
        }
        if (kind == "p") {
            if (n) {
                throw ParseError("line " + std::to_string(line_no) + ": second 'p' line");
            }
            if (tok.size() != 4) {
                throw ParseError("line " + std::to_string(line_no) + ": expected 'p edge n m'");
            }
            n = parse_number<std::size_t>(tok[2], line_no);
            declared = parse_number<std::size_t>(tok[3], line_no);
            edges.reserve(declared);
            return;
        }
        if (kind == "e") {
            if (!n) {
                throw ParseError("line " + std::to_string(line_no) + ": edge before 'p' line");
            }
            if (tok.size() != 3) {
                throw ParseError("line " + std::to_string(line_no) + ": expected 'e u v'");
            }
            const auto u = to_vertex(parse_number<long long>(tok[1], line_no), *n, line_no);
            const auto v = to_vertex(parse_number<long long>(tok[2], line_no), *n, line_no);
            if (u == v) {
                ++self_loops;
                return;
            }
            edges.push_back({std::min(u, v), std::max(u, v)});
            return;
        }
        throw ParseError("line " + std::to_string(line_no) + ": unknown line type '" + std::string(kind) + "'");
    });
    if (!n) {
        throw ParseError("missing 'p edge n m' line");
    }
    if (self_loops > 0) {
        throw ParseError("DIMACS file contains " + std::to_string(self_loops) + " self-loops");
    }
    std::sort(edges.begin(), edges.end());
    const auto before = edges.size();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    DimacsGraph out;
    out.declared_edges = declared;
    out.duplicate_edges = before - edges.size();
    out.graph = Graph(*n, std::move(edges));
    return out;
}

Graph complement(const Graph& g)
{
    const auto n = g.vertex_count();
    std::vector<Edge> edges;
    edges.reserve(n * (n - (n > 0 ? 1 : 0)) / 2 - g.edge_count());
    for (Vertex u = 0; u < n; ++u) {
        const auto& adj = g.adjacency(u);
        for (Vertex v = u + 1; v < n; ++v) {
            if (!adj.test(v)) {
                edges.push_back({u, v});
            }
        }
    }
    return Graph(n, std::move(edges));
}

std::string to_gset(const Graph& g)
{
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u + 1 << ' ' << e.v + 1 << " 1\n";
    }
    return out.str();
}

std::string to_dimacs(const Graph& g, std::string_view comment)
{
    std::ostringstream out;
    if (!comment.empty()) {
        out << "c " << comment << '\n';
    }
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) {
        out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
    return out.str();
}

Graph load_graph(const std::filesystem::path& path)
{
    const auto text = read_file(path);
    bool dimacs = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string::npos) {
            end = text.size();
        }
        auto tokens = split_ws(std::string_view(text).substr(pos, end - pos));
        if (!tokens.empty()) {
            dimacs = tokens[0] == "c" || tokens[0] == "p";
            break;
        }
        pos = end + 1;
    }
    try {
        if (!dimacs) {
            return parse_gset(text);
        }
        auto parsed = parse_dimacs(text);
        if (parsed.duplicate_edges > 0 || parsed.graph.edge_count() != parsed.declared_edges) {
            std::cerr << "warning: " << path.string() << ": header declares " << parsed.declared_edges << " edges, "
                      << parsed.graph.edge_count() << " distinct after dropping " << parsed.duplicate_edges
                      << " duplicates\n";
        }
        return std::move(parsed.graph);
    } catch (const InvalidInput& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

InstanceMeta parse_meta(std::string_view text)
{
    InstanceMeta meta;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("meta line " + std::to_string(line_no) + ": expected key=value");
        }
        auto key = split_ws(line.substr(0, eq));
        auto value = split_ws(line.substr(eq + 1));
        if (key.size() != 1 || value.size() != 1) {
            throw ParseError("meta line " + std::to_string(line_no) + ": expected key=value");
        }
        if (key[0] == "opt") {
            meta.opt = parse_number<double>(value[0], line_no);
        } else if (key[0] == "B") {
            meta.budget = parse_number<std::int64_t>(value[0], line_no);
        } else if (key[0] == "complement") {
            if (value[0] == "true" || value[0] == "1") {
                meta.complement = true;
            } else if (value[0] == "false" || value[0] == "0") {
                meta.complement = false;
            } else {
                throw ParseError("meta line " + std::to_string(line_no) + ": complement expects true/false");
            }
        } else {
            throw ParseError("meta line " + std::to_string(line_no) + ": unknown key '" + std::string(key[0]) + "'");
        }
    }
    return meta;
}

std::filesystem::path default_instance_dir()
{
    if (const char* env = std::getenv("DIVSETS_INSTANCE_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return std::filesystem::current_path();
}

namespace {

    std::optional<std::filesystem::path> find_graph_file(const std::filesystem::path& dir, std::string_view graph)
    {
        for (const char* ext : {"", ".clq", ".col", ".dimacs", ".mis", ".txt", ".gset"}) {
            auto candidate = dir / (std::string(graph) + ext);
            if (std::filesystem::is_regular_file(candidate)) {
                return candidate;
            }
        }
        return std::nullopt;
    }

    std::optional<InstanceMeta> read_meta(const std::filesystem::path& dir, std::string_view stem)
    {
        auto path = dir / (std::string(stem) + ".meta");
        if (!std::filesystem::is_regular_file(path)) {
            return std::nullopt;
        }
        try {
            return parse_meta(read_file(path));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
    }

} // namespace

ProblemInstance resolve_instance(std::string_view name, ProblemKind kind, const std::filesystem::path& instance_dir)
{
    if (name.empty()) {
        throw ConfigError("empty instance name");
    }
    std::string graph_name(name);
    std::optional<std::int64_t> threshold;
    if (kind == ProblemKind::MaxCoverage) {
        const auto dash = name.rfind('-');
        if (dash == std::string_view::npos || dash + 1 == name.size()) {
            throw ConfigError("max coverage instance '" + std::string(name) + "' must be named {graphname}-{threshold}");
        }
        const auto suffix = name.substr(dash + 1);
        std::int64_t b = 0;
        auto [ptr, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), b);
        if (ec != std::errc{} || ptr != suffix.data() + suffix.size() || b < 0) {
            throw ConfigError("max coverage instance '" + std::string(name) + "' has a non-numeric threshold");
        }
        threshold = b;
        graph_name = std::string(name.substr(0, dash));
    }

    const auto file = find_graph_file(instance_dir, graph_name);
    if (!file) {
        throw IoError("no graph file for '" + graph_name + "' in " + instance_dir.string());
    }
    const auto base_meta = read_meta(instance_dir, graph_name).value_or(InstanceMeta{});
    // Coverage optima depend on the threshold, so they live in "{graphname}-{threshold}.meta".
    const auto own_meta = kind == ProblemKind::MaxCoverage ? read_meta(instance_dir, name).value_or(InstanceMeta{}) : base_meta;

    bool use_complement = false;
    switch (kind) {
    case ProblemKind::MaxCut:
        use_complement = false;
        break;
    case ProblemKind::MaxCoverage:
        use_complement = true;
        break;
    case ProblemKind::MinVertexCover:
        use_complement = graph_name.rfind("hamming", 0) == 0;
        break;
    }
    if (own_meta.complement) {
        use_complement = *own_meta.complement;
    } else if (base_meta.complement) {
        use_complement = *base_meta.complement;
    }

    ProblemInstance inst;
    inst.name = std::string(name);
    inst.kind = kind;
    inst.graph = load_graph(*file);
    if (use_complement) {
        inst.graph = complement(inst.graph);
    }
    inst.coverage_budget = threshold ? threshold : own_meta.budget;
    inst.known_opt = own_meta.opt;
    validate(inst);
    return inst;
}

} // namespace divsets
