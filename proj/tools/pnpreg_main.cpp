// Command line front end: run experiment configs or built-in presets.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 solver abort.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pnpreg/errors.hpp"
#include "pnpreg/experiment.hpp"

namespace {

struct RunOptions {
    std::vector<std::string> config_paths;
    std::vector<std::string> presets;
    std::string output_dir;
    long long seed = -1;  // < 0 means keep the config's seed
    bool write_data = false;
};

int run_all(const RunOptions& opt) {
    std::vector<pnp::ExperimentConfig> configs;
    for (const std::string& name : opt.presets) configs.push_back(pnp::preset_config(name));
    for (const std::string& path : opt.config_paths)
        configs.push_back(pnp::parse_config_file(path));
    if (configs.empty())
        throw pnp::config_error("nothing to run: pass config files or --preset");

    for (pnp::ExperimentConfig& cfg : configs) {
        if (!opt.output_dir.empty()) cfg.output_dir = opt.output_dir;
        if (opt.seed >= 0) cfg.problem.seed = static_cast<std::uint64_t>(opt.seed);
        if (opt.write_data) cfg.write_data = true;

        const pnp::ExperimentResult result = pnp::run_experiment(cfg);
        std::cout << pnp::emit_summary_text(result);
        for (const std::string& path : pnp::write_result_files(result, cfg.output_dir))
            std::cout << "wrote " << path << "\n";
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iterative regularization harness for tomographic inverse problems"};
    app.require_subcommand(0, 1);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "list built-in experiment presets");

    RunOptions opt;
    CLI::App* run = app.add_subcommand("run", "run one or more experiment configs");
    run->add_option("configs", opt.config_paths, "experiment config files");
    run->add_option("--preset", opt.presets, "built-in preset name (repeatable)");
    run->add_option("--output-dir", opt.output_dir, "directory for result files");
    run->add_option("--seed", opt.seed, "override problem.seed for every run");
    run->add_flag("--write-data", opt.write_data, "also export phantom, sinogram and "
                                                  "reconstruction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (list_presets) {
            for (const std::string& name : pnp::preset_names())
                std::cout << name << "  " << pnp::preset_description(name) << "\n";
            return 0;
        }
        if (run->parsed()) return run_all(opt);
        std::cerr << app.help();
        return 2;
    } catch (const pnp::solver_abort& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return 3;
    } catch (const pnp::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
