#include "divsets/archive_io.hpp"

#include "divsets/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace divsets {

using Json = nlohmann::ordered_json;

std::vector<FitnessVector> RunArchive::fitness() const
{
    std::vector<FitnessVector> out;
    for (const auto& p : points) {
        out.push_back(p.fitness);
    }
    return out;
}

std::vector<FitnessVector> RunArchive::feasible_fitness() const
{
    std::vector<FitnessVector> out;
    for (const auto& p : points) {
        if (p.violation == 0) {
            out.push_back(p.fitness);
        }
    }
    return out;
}

RunArchive make_archive(const ProblemInstance& inst, Aggregation agg, const RunConfig& config, const RunResult& result)
{
    RunArchive a;
    auto& m = a.meta;
    m.instance = inst.name;
    m.problem = inst.kind;
    m.algorithm = config.algorithm;
    m.aggregation = agg;
    m.r = config.set_size;
    m.n = inst.graph.vertex_count();
    m.diversity_columns = inst.diversity_columns();
    m.population_size = config.population_size;
    m.seed = config.seed;
    m.budget = result.budget;
    m.evaluations = result.evaluations;
    m.generations = result.generations;
    m.crossover_rate = config.crossover_rate;
    m.chi_numerator = config.chi_numerator;
    m.repair = config.repair;
    m.biased_mutation = inst.kind == ProblemKind::MaxCoverage && config.biased_mutation;
    m.known_opt = inst.known_opt;
    m.coverage_budget = inst.coverage_budget;
    m.diversity_bound = inst.diversity_upper_bound(static_cast<std::int64_t>(config.set_size));
    for (const auto& ind : result.archive) {
        a.points.push_back({*ind.fitness(), ind.violation().value_or(0), ind.genome()});
    }
    return a;
}

std::string to_hex(const BitVec& bits)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out((bits.size() + 3) / 4, '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits.test(i)) {
            const auto nibble = static_cast<std::size_t>(std::string_view(digits).find(out[i / 4]));
            out[i / 4] = digits[nibble | (8U >> (i % 4))];
        }
    }
    return out;
}

BitVec from_hex(std::string_view hex, std::size_t nbits)
{
    if (hex.size() != (nbits + 3) / 4) {
        throw ParseError("hex genome has " + std::to_string(hex.size()) + " digits, expected " + std::to_string((nbits + 3) / 4));
    }
    BitVec bits(nbits);
    for (std::size_t c = 0; c < hex.size(); ++c) {
        unsigned v = 0;
        const char ch = hex[c];
        if (ch >= '0' && ch <= '9') {
            v = static_cast<unsigned>(ch - '0');
        } else if (ch >= 'a' && ch <= 'f') {
            v = static_cast<unsigned>(ch - 'a' + 10);
        } else {
            throw ParseError("bad hex digit in genome");
        }
        for (unsigned k = 0; k < 4; ++k) {
            const auto i = c * 4 + k;
            if ((v >> (3 - k)) & 1U) {
                if (i >= nbits) {
                    throw ParseError("hex genome sets padding bits");
                }
                bits.set(i);
            }
        }
    }
    return bits;
}

namespace {

    template <typename T>
    Json optional_json(const std::optional<T>& v)
    {
        return v ? Json(*v) : Json(nullptr);
    }

    template <typename T>
    std::optional<T> optional_from(const Json& j)
    {
        if (j.is_null()) {
            return std::nullopt;
        }
        return j.get<T>();
    }

} // namespace

std::string serialize_archive(const RunArchive& archive)
{
    const auto& m = archive.meta;
    Json meta;
    meta["instance"] = m.instance;
    meta["problem"] = to_string(m.problem);
    meta["algorithm"] = to_string(m.algorithm);
    meta["aggregation"] = to_string(m.aggregation);
    meta["r"] = m.r;
    meta["n"] = m.n;
    meta["diversity_columns"] = m.diversity_columns;
    meta["population_size"] = m.population_size;
    meta["seed"] = m.seed;
    meta["budget"] = m.budget;
    meta["evaluations"] = m.evaluations;
    meta["generations"] = m.generations;
    meta["crossover_rate"] = m.crossover_rate;
    meta["chi_numerator"] = m.chi_numerator;
    meta["repair"] = m.repair;
    meta["biased_mutation"] = m.biased_mutation;
    meta["known_opt"] = optional_json(m.known_opt);
    meta["coverage_budget"] = optional_json(m.coverage_budget);
    meta["diversity_bound"] = optional_json(m.diversity_bound);
    meta["software"] = m.software;

    Json points = Json::array();
    for (const auto& p : archive.points) {
        points.push_back({{"f1", p.fitness.f1}, {"f2", p.fitness.f2}, {"violation", p.violation}, {"genome", to_hex(p.genome)}});
    }
    Json doc;
    doc["format"] = "divsets-archive";
    doc["version"] = 1;
    doc["metadata"] = std::move(meta);
    doc["points"] = std::move(points);
    return doc.dump(1) + "\n";
}

RunArchive parse_archive(std::string_view json_text)
{
    try {
        const auto doc = Json::parse(json_text);
        if (doc.at("format") != "divsets-archive" || doc.at("version") != 1) {
            throw ParseError("not a version-1 divsets archive");
        }
        const auto& meta = doc.at("metadata");
        RunArchive a;
        auto& m = a.meta;
        m.instance = meta.at("instance").get<std::string>();
        m.problem = parse_problem_kind(meta.at("problem").get<std::string>());
        m.algorithm = parse_algorithm(meta.at("algorithm").get<std::string>());
        m.aggregation = parse_aggregation(meta.at("aggregation").get<std::string>());
        m.r = meta.at("r").get<std::size_t>();
        m.n = meta.at("n").get<std::size_t>();
        m.diversity_columns = meta.at("diversity_columns").get<std::size_t>();
        m.population_size = meta.at("population_size").get<std::size_t>();
        m.seed = meta.at("seed").get<std::uint64_t>();
        m.budget = meta.at("budget").get<std::uint64_t>();
        m.evaluations = meta.at("evaluations").get<std::uint64_t>();
        m.generations = meta.at("generations").get<std::uint64_t>();
        m.crossover_rate = meta.at("crossover_rate").get<double>();
        m.chi_numerator = meta.at("chi_numerator").get<double>();
        m.repair = meta.at("repair").get<bool>();
        m.biased_mutation = meta.at("biased_mutation").get<bool>();
        m.known_opt = optional_from<double>(meta.at("known_opt"));
        m.coverage_budget = optional_from<std::int64_t>(meta.at("coverage_budget"));
        m.diversity_bound = optional_from<std::int64_t>(meta.at("diversity_bound"));
        m.software = meta.at("software").get<std::string>();
        for (const auto& p : doc.at("points")) {
            ArchivePoint pt;
            pt.fitness = {p.at("f1").get<double>(), p.at("f2").get<double>()};
            pt.violation = p.at("violation").get<std::int64_t>();
            pt.genome = from_hex(p.at("genome").get<std::string>(), m.r * m.n);
            a.points.push_back(std::move(pt));
        }
        return a;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed archive: ") + e.what());
    } catch (const ConfigError& e) {
        throw ParseError(std::string("malformed archive: ") + e.what());
    }
}

void save_archive(const std::filesystem::path& path, const RunArchive& archive)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out << serialize_archive(archive);
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

RunArchive load_archive(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_archive(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<std::filesystem::path> list_archives(const std::filesystem::path& dir)
{
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw IoError("archive directory " + dir.string() + " does not exist");
    }
    std::vector<std::filesystem::path> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace divsets
