// kerramp: command-line driver for the two-mode Kerr amplifier model.

#include "kerramp/cli.hpp"
#include "kerramp/config.hpp"
#include "kerramp/error.hpp"
#include "kerramp/execution.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Two-mode Kerr amplifier: bright-point analysis, gain/noise sweeps and oracles"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::optional<double> omega;
    app.add_option("--config", config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "Output CSV path (default: [output] path, else stdout)");
    app.add_option("--seed", seed, "RNG seed for mc-validate");
    app.add_option("--threads", threads, "OpenMP threads (default: KERRAMP_THREADS, else all cores)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--omega", omega, "Probe frequency for noise spectra");
    app.fallthrough();

    for (const auto& name : kerramp::subcommand_names()) {
        app.add_subcommand(name);
    }

    CLI11_PARSE(app, argc, argv);
    const std::string name = app.get_subcommands().front()->get_name();

    kerramp::RunConfig config;
    try {
        config = kerramp::load_config(config_path);
        kerramp::configure_threads(threads);
    } catch (const kerramp::Error& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return 1;
    }
    if (seed) {
        config.seed = *seed;
    }
    if (omega) {
        config.omega = *omega;
    }
    if (out_path.empty()) {
        out_path = config.output;
    }

    std::ostringstream csv;
    const int status = kerramp::run_subcommand(name, config, csv, std::cerr);
    if (status != 0) {
        return status;
    }
    if (out_path.empty()) {
        std::cout << csv.str();
        return 0;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << csv.str())) {
        std::cerr << name << ": cannot write '" << out_path << "'\n";
        return 1;
    }
    return 0;
}
