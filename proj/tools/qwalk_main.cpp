// qwalk command-line runner.
//
//   qwalk <simulate|metrics|spectral|classical|sweep> --config <path>
//         [--out <dir>] [--workers <n>]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>

#include "qwalk/qwalk.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    int workers = -1;  // -1: not given on the command line
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file")
        ->required();
    cmd->add_option("--out", opts.out_dir, "output directory (default: config out_dir)");
    cmd->add_option("--workers", opts.workers, "worker threads for sweeps (0 = auto)");
}

qwalk::ExperimentConfig load(const CommonOpts& opts) {
    qwalk::ExperimentConfig cfg =
        qwalk::parse_config_text(qwalk::read_file(opts.config_path), opts.config_path);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.workers >= 0) cfg.workers = opts.workers;
    return cfg;
}

void report(const nlohmann::ordered_json& manifest, const std::string& outdir) {
    for (const auto& entry : manifest["outputs"])
        std::cout << "wrote " << outdir << "/" << entry["file"].get<std::string>() << "\n";
    std::cout << "wrote " << outdir << "/manifest.json\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-dimensional discrete-time quantum walk toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* simulate = app.add_subcommand("simulate", "evolve a walk and export distributions");
    CLI::App* metrics = app.add_subcommand("metrics", "time series of scalar observables");
    CLI::App* spectral = app.add_subcommand("spectral", "momentum-space bands and velocity density");
    CLI::App* classical = app.add_subcommand("classical", "classical random-walk baselines");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps (rho, delta, steps)");
    for (CLI::App* cmd : {simulate, metrics, spectral, classical, sweep}) add_common(cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        const qwalk::ExperimentConfig cfg = load(opts);
        nlohmann::ordered_json manifest;
        if (simulate->parsed()) manifest = qwalk::run_simulate(cfg, cfg.out_dir);
        else if (metrics->parsed()) manifest = qwalk::run_metrics(cfg, cfg.out_dir);
        else if (spectral->parsed()) manifest = qwalk::run_spectral(cfg, cfg.out_dir);
        else if (classical->parsed()) manifest = qwalk::run_classical(cfg, cfg.out_dir);
        else manifest = qwalk::run_sweep(cfg, cfg.out_dir);
        report(manifest, cfg.out_dir);
        return 0;
    } catch (const qwalk::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const qwalk::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
