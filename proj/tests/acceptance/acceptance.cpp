// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.
#include "divsets/diversity.hpp"
#include "divsets/dominance.hpp"
#include "divsets/error.hpp"
#include "divsets/harness.hpp"
#include "divsets/instance_gen.hpp"
#include "divsets/instance_io.hpp"
#include "divsets/stats.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace divsets;

namespace {

// Pinned tolerances.
constexpr double frb_igd_target = 0.70711;
constexpr double frb_hv_target = 0.25;
constexpr double frb_tolerance = 0.02;
constexpr double coverage_fraction = 0.8;
constexpr std::size_t maxcut_min_distinct = 15;
constexpr double maxcut_budget_fraction = 0.1;
constexpr double z_limit = 3.0;

struct Options {
    std::filesystem::path work = "acceptance_work";
    std::filesystem::path cli;
    std::set<int> only;
    std::size_t paper_runs = 10;
    std::size_t coverage_runs = 5;
    std::size_t maxcut_runs = 3;
};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt_double(double v)
{
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::vector<FitnessVector> uniform_points(Rng& rng, std::size_t count)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<FitnessVector> pts(count);
    for (auto& p : pts) {
        p = {u(rng), u(rng)};
    }
    return pts;
}

bool naive_dominates(const FitnessVector& a, const FitnessVector& b)
{
    return a.f1 >= b.f1 && a.f2 >= b.f2 && (a.f1 != b.f1 || a.f2 != b.f2);
}

bool within(double observed, double trials, double p)
{
    return std::abs(observed - trials * p) <= z_limit * std::sqrt(trials * p * (1.0 - p));
}

// Instance lookup: DIVSETS_INSTANCE_DIR if it holds the file, else the generated set.
struct Located {
    ProblemInstance inst;
    std::string source;
};

Located locate(const Options& opt, const std::string& name, ProblemKind kind, std::optional<double> fallback_opt)
{
    if (const char* env = std::getenv("DIVSETS_INSTANCE_DIR"); env != nullptr && *env != '\0') {
        try {
            Located l{resolve_instance(name, kind, env), std::string("file in ") + env};
            if (!l.inst.known_opt && fallback_opt) {
                l.inst.known_opt = fallback_opt;
                l.source += ", opt=" + fmt_double(*fallback_opt) + " assumed";
            }
            return l;
        } catch (const IoError&) {
        }
    }
    const auto dir = opt.work / "instances";
    (void)write_desk_instances(dir, false);
    const bool exact = name.rfind("hamming", 0) == 0;
    return {resolve_instance(name, kind, dir), exact ? "generated (exact)" : "generated stand-in"};
}

std::vector<RunArchive> run_archives(const ProblemInstance& inst, const ExperimentConfig& config)
{
    const auto configs = expand_runs(config);
    const auto results = run_batch(inst, config.aggregation, configs, config.jobs);
    std::vector<RunArchive> out;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        out.push_back(make_archive(inst, config.aggregation, configs[i], results[i]));
    }
    return out;
}

ExperimentConfig paper_defaults(const ProblemInstance& inst, std::size_t runs)
{
    ExperimentConfig c;
    c.problem = inst.kind;
    c.instance = inst.name;
    c.r = 10;
    c.runs = runs;
    return c;
}

Outcome criterion_bound()
{
    int checked = 0;
    int equal = 0;
    for (int n = 1; n <= 5; ++n) {
        for (int b = 0; b <= n; ++b) {
            for (int r = 1; r <= 4; ++r) {
                ++checked;
                equal += diversity_bound(n, b, r) == brute_force_max_diversity(n, b, r);
            }
        }
    }
    return {equal == checked, std::to_string(equal) + "/" + std::to_string(checked) + " grid points equal"};
}

Outcome criterion_hamming(const Options& opt)
{
    const auto loc = locate(opt, "hamming6-2", ProblemKind::MinVertexCover, 32.0);
    auto config = paper_defaults(loc.inst, opt.paper_runs);
    config.repair = true;
    ArchiveGroup group{"hamming", run_archives(loc.inst, config)};
    const auto row = score_group(group);
    bool pass = row.algorithms.size() == 2;
    std::string detail = loc.source + ", " + std::to_string(opt.paper_runs) + " runs;";
    for (const auto& a : row.algorithms) {
        const auto& m = a.summary.median;
        pass = pass && m.igd_plus == 0.0 && m.hypervolume == 1.0;
        detail += " " + std::string(to_string(a.algorithm)) + " IGD+=" + fmt_double(m.igd_plus) + " HV=" + fmt_double(m.hypervolume);
    }
    return {pass, detail};
}

Outcome criterion_frb(const Options& opt)
{
    const auto loc = locate(opt, "frb30-15-1", ProblemKind::MinVertexCover, 30.0);
    bool pass = true;
    std::string detail = loc.source + ", " + std::to_string(opt.paper_runs) + " runs;";
    for (auto agg : {Aggregation::Min, Aggregation::Avg}) {
        auto config = paper_defaults(loc.inst, opt.paper_runs);
        config.repair = true;
        config.aggregation = agg;
        ArchiveGroup group{"frb", run_archives(loc.inst, config)};
        const auto row = score_group(group);
        pass = pass && row.algorithms.size() == 2;
        for (const auto& a : row.algorithms) {
            const auto& m = a.summary.median;
            pass = pass && std::abs(m.igd_plus - frb_igd_target) <= frb_tolerance && std::abs(m.hypervolume - frb_hv_target) <= frb_tolerance;
            detail += " " + std::string(to_string(agg)) + "/" + std::string(to_string(a.algorithm)) + " IGD+=" + fmt_double(m.igd_plus)
                + " HV=" + fmt_double(m.hypervolume);
        }
    }
    return {pass, detail};
}

Outcome criterion_maxcut(const Options& opt)
{
    const auto loc = locate(opt, "G1", ProblemKind::MaxCut, std::nullopt);
    auto config = paper_defaults(loc.inst, opt.maxcut_runs);
    config.budget_multiplier = 5.0 * maxcut_budget_fraction;
    const auto archives = run_archives(loc.inst, config);
    const auto cap = loc.inst.bound_cardinality().value();
    const auto bound = static_cast<double>(diversity_bound(static_cast<std::int64_t>(loc.inst.graph.edge_count()), cap, 10));

    bool nondominated = true;
    bool bounded = true;
    bool rich = true;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    double top_f2 = 0.0;
    for (const auto& a : archives) {
        std::set<std::pair<double, double>> distinct;
        for (const auto& p : a.points) {
            distinct.insert({p.fitness.f1, p.fitness.f2});
            bounded = bounded && p.fitness.f2 <= bound;
            top_f2 = std::max(top_f2, p.fitness.f2);
            for (const auto& q : a.points) {
                nondominated = nondominated && !naive_dominates(q.fitness, p.fitness);
            }
        }
        fewest = std::min(fewest, distinct.size());
        rich = rich && distinct.size() >= maxcut_min_distinct;
    }
    const std::string detail = loc.source + (loc.inst.known_opt ? "" : " (no OPT sidecar, cap |E|)") + ", "
        + std::to_string(archives.size()) + " runs at 10% budget; (a) non-dominated " + (nondominated ? "yes" : "NO") + "; (b) max f2 "
        + fmt_double(top_f2) + " <= g " + fmt_double(bound) + (bounded ? "" : " VIOLATED") + "; (c) fewest distinct fitness values "
        + std::to_string(fewest) + " (need " + std::to_string(maxcut_min_distinct) + ")";
    return {nondominated && bounded && rich, detail};
}

Outcome criterion_coverage(const Options& opt)
{
    const auto base = locate(opt, "frb30-15-1", ProblemKind::MinVertexCover, std::nullopt);
    // Same directory as the vertex cover lookup, threshold suffix 10.
    const auto dir = base.source.rfind("file in ", 0) == 0 ? std::filesystem::path(std::getenv("DIVSETS_INSTANCE_DIR")) : opt.work / "instances";
    const auto inst = resolve_instance("frb30-15-1-10", ProblemKind::MaxCoverage, dir);
    auto config = paper_defaults(inst, opt.coverage_runs);
    config.biased_mutation = true;
    const auto archives = run_archives(inst, config);
    const auto bound = static_cast<double>(inst.diversity_upper_bound(10).value());
    const double target = coverage_fraction * bound;

    bool feasible = true;
    bool reached = true;
    std::string detail = base.source + ", " + std::to_string(opt.coverage_runs) + " runs; target f2 >= " + fmt_double(target) + ";";
    for (auto alg : {Algorithm::Nsga2, Algorithm::Spea2}) {
        std::vector<double> f2;
        for (const auto& a : archives) {
            if (a.meta.algorithm != alg) {
                continue;
            }
            for (const auto& p : a.points) {
                feasible = feasible && p.violation == 0;
                f2.push_back(p.fitness.f2);
            }
        }
        const double med = median(f2);
        reached = reached && med >= target;
        detail += " " + std::string(to_string(alg)) + " median f2=" + fmt_double(med) + " (" + fmt_double(med / bound) + " of g)";
    }
    detail += feasible ? "; all points feasible" : "; INFEASIBLE points present";
    return {feasible && reached, detail};
}

Outcome criterion_indicator_oracles()
{
    Rng rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    int hv_ok = 0;
    const int fronts = 50;
    const int samples = 1000000;
    for (int f = 0; f < fronts; ++f) {
        const auto front = nondominated_filter(uniform_points(rng, 1 + uniform_index(rng, 20)));
        int hits = 0;
        for (int s = 0; s < samples; ++s) {
            const double x = u(rng);
            const double y = u(rng);
            hits += std::any_of(front.begin(), front.end(), [&](const auto& a) { return a.f1 >= x && a.f2 >= y; });
        }
        hv_ok += within(hits, samples, hypervolume_2d(front));
    }

    int igd_ok = 0;
    const int igd_cases = 500;
    for (int t = 0; t < igd_cases; ++t) {
        const auto front = uniform_points(rng, 1 + uniform_index(rng, 30));
        const auto ref = uniform_points(rng, 1 + uniform_index(rng, 30));
        double total = 0.0;
        for (const auto& z : ref) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& a : front) {
                const double d1 = std::max(z.f1 - a.f1, 0.0);
                const double d2 = std::max(z.f2 - a.f2, 0.0);
                best = std::min(best, std::sqrt(d1 * d1 + d2 * d2));
            }
            total += best;
        }
        igd_ok += igd_plus(front, ref) == total / static_cast<double>(ref.size());
    }

    int filter_ok = 0;
    int sort_ok = 0;
    const int populations = 500;
    for (int t = 0; t < populations; ++t) {
        std::vector<FitnessVector> pts;
        const auto grid = 2 + uniform_index(rng, 15);
        for (std::size_t i = 0, n = 1 + uniform_index(rng, 60); i < n; ++i) {
            pts.push_back({static_cast<double>(uniform_index(rng, grid)), static_cast<double>(uniform_index(rng, grid))});
        }
        std::set<std::pair<double, double>> expected;
        for (const auto& p : pts) {
            if (std::none_of(pts.begin(), pts.end(), [&](const auto& q) { return naive_dominates(q, p); })) {
                expected.insert({p.f1, p.f2});
            }
        }
        std::set<std::pair<double, double>> got;
        const auto filtered = nondominated_filter(pts);
        for (const auto& p : filtered) {
            got.insert({p.f1, p.f2});
        }
        filter_ok += got == expected && filtered.size() == expected.size();

        // Naive peeling.
        std::vector<std::vector<std::size_t>> naive;
        std::vector<bool> used(pts.size(), false);
        for (std::size_t left = pts.size(); left > 0;) {
            std::vector<std::size_t> front;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (used[i]) {
                    continue;
                }
                bool dominated = false;
                for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
                    dominated = !used[j] && naive_dominates(pts[j], pts[i]);
                }
                if (!dominated) {
                    front.push_back(i);
                }
            }
            for (auto i : front) {
                used[i] = true;
            }
            left -= front.size();
            naive.push_back(front);
        }
        sort_ok += fast_nondominated_sort(pts) == naive;
    }
    const bool pass = hv_ok == fronts && igd_ok == igd_cases && filter_ok == populations && sort_ok == populations;
    return {pass, "HV within 3 sigma on " + std::to_string(hv_ok) + "/" + std::to_string(fronts) + " fronts (10^6 samples); IGD+ exact "
            + std::to_string(igd_ok) + "/" + std::to_string(igd_cases) + "; filter " + std::to_string(filter_ok) + "/"
            + std::to_string(populations) + "; sort " + std::to_string(sort_ok) + "/" + std::to_string(populations)};
}

Outcome criterion_operators()
{
    Rng rng(77);
    const std::size_t r = 10;
    const std::size_t n = 50;
    const double chi = 0.5 / static_cast<double>(n);
    const int trials = 100000;

    std::vector<Solution> rows;
    for (std::size_t i = 0; i < r; ++i) {
        BitVec b(n);
        for (std::size_t j = 0; j < n; ++j) {
            b.assign(j, coin(rng, 0.5));
        }
        rows.push_back(b);
    }
    const auto ind = encode(rows);
    double flips = 0;
    for (int t = 0; t < trials; ++t) {
        const auto out = standard_bit_mutation(ind, chi, rng);
        for (std::size_t i = 0; i < r; ++i) {
            flips += static_cast<double>(hamming_distance(out.solution(i), ind.solution(i)));
        }
    }
    const bool standard_ok = within(flips, static_cast<double>(trials) * static_cast<double>(r * n), chi);

    // Biased: C(x) = 2 on every solution, so 1-bits flip at 3 chi and 0-bits at chi.
    const ViolationReport report{std::vector<std::int64_t>(r, 2), static_cast<std::int64_t>(2 * r)};
    double one_flips = 0;
    double zero_flips = 0;
    double ones = 0;
    for (const auto& x : rows) {
        ones += static_cast<double>(x.count());
    }
    for (int t = 0; t < trials; ++t) {
        const auto out = coverage_biased_mutation(ind, chi, report, rng);
        for (std::size_t i = 0; i < r; ++i) {
            auto diff = out.solution(i);
            diff ^= ind.solution(i);
            auto from_one = diff;
            from_one &= ind.solution(i);
            one_flips += static_cast<double>(from_one.count());
            zero_flips += static_cast<double>(diff.count() - from_one.count());
        }
    }
    const double zeros = static_cast<double>(r * n) - ones;
    const bool biased_ok = within(one_flips, trials * ones, 3.0 * chi) && within(zero_flips, trials * zeros, chi);

    int conserved = 0;
    const int pairs = 10000;
    for (int t = 0; t < pairs; ++t) {
        const auto rr = 1 + uniform_index(rng, 10);
        const auto nn = 1 + uniform_index(rng, 100);
        std::vector<Solution> a_rows;
        for (std::size_t i = 0; i < rr; ++i) {
            BitVec b(nn);
            for (std::size_t j = 0; j < nn; ++j) {
                b.assign(j, coin(rng, 0.5));
            }
            a_rows.push_back(b);
        }
        // Identical blocks make the pre-crossover shuffle of the second parent a no-op, so
        // conservation can be checked position by position.
        BitVec block(nn);
        for (std::size_t j = 0; j < nn; ++j) {
            block.assign(j, coin(rng, 0.5));
        }
        const auto a = encode(a_rows);
        const auto b = encode(std::vector<Solution>(rr, block));
        const auto [c, d] = uniform_crossover(a, b, 1.0, rng);
        bool ok = c.genome_length() == a.genome_length() && d.genome_length() == a.genome_length();
        for (std::size_t p = 0; ok && p < a.genome_length(); ++p) {
            ok = int(c.genome_bit(p)) + int(d.genome_bit(p)) == int(a.genome_bit(p)) + int(b.genome_bit(p));
        }
        conserved += ok;
    }
    return {standard_ok && biased_ok && conserved == pairs,
        "standard flips " + fmt_double(flips / trials) + " per individual (expect " + fmt_double(chi * r * n) + ")"
            + (standard_ok ? "" : " OUT") + "; biased 1-bit rate " + fmt_double(one_flips / (trials * ones) / chi) + " chi, 0-bit rate "
            + fmt_double(zero_flips / (trials * zeros) / chi) + " chi" + (biased_ok ? "" : " OUT") + "; crossover conservation "
            + std::to_string(conserved) + "/" + std::to_string(pairs)};
}

Outcome criterion_repair()
{
    Rng rng(4242);
    int good = 0;
    const int cases = 1000;
    for (int t = 0; t < cases; ++t) {
        const auto n = 1 + uniform_index(rng, 30);
        const double p = std::uniform_real_distribution<double>(0.05, 0.9)(rng);
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (coin(rng, p)) {
                    edges.push_back({u, v});
                }
            }
        }
        const Graph g(n, edges);
        BitVec x(n);
        const double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        for (std::size_t j = 0; j < n; ++j) {
            x.assign(j, coin(rng, density));
        }
        mvc_repair(g, x, rng);
        auto uncovered = [&](const BitVec& s) {
            return std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return !s.test(e.u) && !s.test(e.v); });
        };
        bool ok = uncovered(x) == 0;
        for (auto v : x.ones()) {
            auto y = x;
            y.reset(v);
            ok = ok && uncovered(y) > 0;
        }
        good += ok;
    }
    return {good == cases, std::to_string(good) + "/" + std::to_string(cases) + " repaired solutions are covers without removable vertices"};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion_determinism(const Options& opt)
{
    const auto instances = opt.work / "instances";
    (void)write_desk_instances(instances, false);
    const auto root = opt.work / "determinism";
    std::filesystem::remove_all(root);
    std::filesystem::create_directories(root);
    const std::array<std::filesystem::path, 2> outs{root / "first", root / "second"};

    std::string how;
    if (!opt.cli.empty()) {
        const auto config = root / "run.toml";
        std::ofstream(config) << "problem = \"mvc\"\ninstance = \"hamming6-2\"\ninstance-dir = \"" << instances.string()
                              << "\"\nrepair = true\nr = 10\nruns = 3\nbudget-multiplier = 0.5\nseed = 7\n";
        for (const auto& out : outs) {
            const auto cmd = opt.cli.string() + " run --config " + config.string() + " --out " + out.string() + " > /dev/null";
            if (std::system(cmd.c_str()) != 0) {
                return {false, "CLI invocation failed: " + cmd};
            }
        }
        how = "two CLI invocations";
    } else {
        ExperimentConfig c;
        c.problem = ProblemKind::MinVertexCover;
        c.instance = "hamming6-2";
        c.instance_dir = instances;
        c.repair = true;
        c.runs = 3;
        c.budget_multiplier = 0.5;
        c.base_seed = 7;
        for (const auto& out : outs) {
            c.output_dir = out;
            (void)cmd_run(c);
        }
        how = "two in-process runs";
    }
    const auto a = list_archives(outs[0]);
    const auto b = list_archives(outs[1]);
    bool same = !a.empty() && a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) {
        same = a[i].filename() == b[i].filename() && slurp(a[i]) == slurp(b[i]);
    }
    return {same, how + ", " + std::to_string(a.size()) + " archives " + (same ? "byte-identical" : "DIFFER")};
}

} // namespace

int main(int argc, char** argv)
{
    Options opt;
    CLI::App app{"divsets acceptance suite"};
    std::vector<int> only;
    app.add_option("--work", opt.work, "Scratch directory")->capture_default_str();
    app.add_option("--cli", opt.cli, "divsets executable for the determinism check");
    app.add_option("--only", only, "Criteria to run (default: all)");
    app.add_option("--paper-runs", opt.paper_runs, "Runs per algorithm for the vertex cover tables")->capture_default_str();
    CLI11_PARSE(app, argc, argv);
    opt.only.insert(only.begin(), only.end());

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"bound exactness", [] { return criterion_bound(); }},
        {"hamming6-2 vertex cover rows", [&] { return criterion_hamming(opt); }},
        {"frb30-15-1 vertex cover rows", [&] { return criterion_frb(opt); }},
        {"max cut front shape", [&] { return criterion_maxcut(opt); }},
        {"max coverage feasibility", [&] { return criterion_coverage(opt); }},
        {"indicator oracles", [] { return criterion_indicator_oracles(); }},
        {"operator statistics", [] { return criterion_operators(); }},
        {"repair correctness", [] { return criterion_repair(); }},
        {"determinism", [&] { return criterion_determinism(opt); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!opt.only.empty() && opt.only.count(id) == 0) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !out.pass;
        std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first << "): " << out.detail << " ["
                  << fmt_double(secs) << " s]" << std::endl;
    }
    return failures;
}
