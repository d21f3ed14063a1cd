// Writes the desk-scale instance set: hamming6-2 exactly, plus random stand-ins for
// frb30-15-1 and G1 where the originals are not at hand.
#include "divsets/error.hpp"
#include "divsets/instance_gen.hpp"
#include "divsets/instance_io.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace divsets;

    CLI::App app{"Generate benchmark instances and stand-ins"};
    std::filesystem::path out;
    bool force = false;
    std::uint64_t seed = 1;
    app.add_option("--out", out, "Target directory (default: $DIVSETS_INSTANCE_DIR or .)");
    app.add_flag("--force", force, "Overwrite existing files");
    app.add_option("--seed", seed, "Seed for the random stand-ins")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Config);
    }

    try {
        for (const auto& f : write_desk_instances(out.empty() ? default_instance_dir() : out, force, seed)) {
            std::cout << (f.written ? "wrote " : "kept  ") << f.path.string() << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    }
    return 0;
}
