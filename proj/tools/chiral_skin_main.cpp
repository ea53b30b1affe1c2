#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cskin/errors.hpp"
#include "cskin/experiments.hpp"

namespace {

std::string resolve_out_root(const std::string& flag_dir, const cskin::ExperimentConfig& cfg) {
    if (!flag_dir.empty()) return flag_dir;
    if (cfg.output.dir_set) return cfg.output.dir;
    if (const char* env = std::getenv("CHIRAL_SKIN_OUT_DIR"); env && *env) return env;
    return ".";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chiral-skin: bound photon pairs in chirally coupled atom arrays"};
    app.require_subcommand(1);

    std::string config_path, out_dir, format;
    int threads = 0;
    long long seed = -1;

    CLI::App* run = app.add_subcommand("run", "run an experiment and write its datasets");
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--out-dir", out_dir, "output root directory");
    run->add_option("--format", format, "output format (csv|json)")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_option("--threads", threads, "worker threads for parameter sweeps");
    run->add_option("--seed", seed, "seed for eigensolver self-test matrices");

    CLI::App* validate = app.add_subcommand("validate", "check a config without running");
    validate->add_option("config", config_path, "experiment config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            const cskin::ValidationReport rep = cskin::validate_config_file(config_path);
            std::cout << rep.str();
            return rep.ok() ? 0 : 1;
        }

        cskin::ExperimentConfig cfg = cskin::load_config(config_path);
        if (!format.empty())
            cfg.output.format =
                format == "json" ? cskin::OutputFormat::Json : cskin::OutputFormat::Csv;
        if (threads > 0) cfg.threads = threads;
        if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);

        const std::string root = resolve_out_root(out_dir, cfg);
        return cskin::run_experiment(cfg, root, std::cout);
    } catch (const cskin::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const cskin::Error& e) {
        std::cerr << "numerics error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
