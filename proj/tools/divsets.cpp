#include "divsets/diversity.hpp"
#include "divsets/error.hpp"
#include "divsets/harness.hpp"
#include "divsets/instance_io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

// Top-level keys of a config file belong to the `run` subcommand.
struct RunConfigFile : CLI::ConfigTOML {
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override
    {
        auto items = CLI::ConfigTOML::from_config(input);
        for (auto& item : items) {
            if (item.parents.empty() && !item.name.empty()) {
                item.parents = {"run"};
            }
        }
        return items;
    }
};

} // namespace

int main(int argc, char** argv)
{
    using namespace divsets;

    CLI::App app{"Evolutionary diversity optimisation with EMO algorithms"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<RunConfigFile>());
    app.set_config("--config", "", "key = value file with run settings; command-line flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);

    ExperimentConfig config;
    std::string problem = "maxcut";
    std::string aggregation = "min";
    std::vector<std::string> algorithms{"nsga2", "spea2"};
    std::uint64_t budget = 0;
    bool no_biased = false;

    auto* run = app.add_subcommand("run", "Execute seeded runs and write one archive per run");
    run->add_option("--problem", problem, "maxcut | maxcoverage | mvc")->capture_default_str();
    run->add_option("--instance", config.instance, "Catalog name or graph file")->required();
    run->add_option("--instance-dir", config.instance_dir, "Instance directory (default: $DIVSETS_INSTANCE_DIR or .)");
    run->add_option("--agg", aggregation, "min | avg")->capture_default_str();
    run->add_option("--r", config.r, "Solutions per individual")->capture_default_str();
    run->add_option("--population", config.population_size, "Population size N")->capture_default_str();
    run->add_option("--crossover-rate", config.crossover_rate)->capture_default_str();
    run->add_option("--chi", config.chi_numerator, "Mutation probability numerator, chi = value / n")->capture_default_str();
    run->add_option("--budget-multiplier", config.budget_multiplier, "Budget = multiplier * r * n * N")->capture_default_str();
    run->add_option("--budget", budget, "Absolute evaluation budget, overrides the multiplier");
    run->add_flag("--repair", config.repair, "Repair infeasible solutions (mvc)");
    run->add_flag("--no-biased-mutation", no_biased, "Plain bit mutation for maxcoverage");
    run->add_option("--runs", config.runs)->capture_default_str();
    run->add_option("--seed", config.base_seed, "Base seed; run i uses seed + i")->capture_default_str();
    run->add_option("--algorithms", algorithms, "nsga2 and/or spea2")->capture_default_str();
    run->add_option("--out", config.output_dir, "Archive directory")->capture_default_str();
    run->add_option("--jobs", config.jobs, "Worker threads, 0 = all")->capture_default_str();
    run->add_option("--trace", config.trace_interval, "Generations between trace rows, 0 = off")->capture_default_str();

    std::filesystem::path archive_dir;
    std::filesystem::path out_dir = "results";
    auto* indicators = app.add_subcommand("indicators", "Score archives and write indicator tables");
    indicators->add_option("archives", archive_dir, "Archive directory")->required();
    indicators->add_option("--out", out_dir)->capture_default_str();

    auto* plotdata = app.add_subcommand("plotdata", "Write per-group scatter data");
    plotdata->add_option("archives", archive_dir, "Archive directory")->required();
    plotdata->add_option("--out", out_dir)->capture_default_str();

    std::int64_t n = 0;
    std::int64_t b = 0;
    std::int64_t r = 0;
    auto* bound = app.add_subcommand("bound", "Print the maximum distance-sum diversity g(n, b, r)");
    bound->add_option("n", n)->required();
    bound->add_option("b", b)->required();
    bound->add_option("r", r)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Config);
    }

    try {
        if (*run) {
            config.problem = parse_problem_kind(problem);
            config.aggregation = parse_aggregation(aggregation);
            config.algorithms.clear();
            for (const auto& a : algorithms) {
                config.algorithms.push_back(parse_algorithm(a));
            }
            if (budget > 0) {
                config.budget = budget;
            }
            config.biased_mutation = !no_biased;
            const auto paths = cmd_run(config);
            std::cout << "wrote " << paths.size() << " archives to " << config.output_dir.string() << "\n";
        } else if (*indicators) {
            const auto rows = cmd_indicators(archive_dir, out_dir);
            std::cout << "scored " << rows.size() << " groups into " << (out_dir / "indicators.csv").string() << "\n";
        } else if (*plotdata) {
            const auto files = cmd_plotdata(archive_dir, out_dir);
            for (const auto& f : files) {
                std::cout << f.string() << "\n";
            }
        } else if (*bound) {
            std::cout << diversity_bound(n, b, r) << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Internal);
    }
    return 0;
}
