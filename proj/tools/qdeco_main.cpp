#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qdeco/run.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string assembly;
    unsigned threads = 0;
};

qdeco::RunConfig load_with_overrides(const CliOptions& opt) {
    qdeco::RunConfig cfg = qdeco::load_run_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.output.dir = opt.out_dir;
    if (!opt.assembly.empty()) cfg.assembly = qdeco::assembly_from_string(opt.assembly);
    if (opt.threads > 0) cfg.threads = opt.threads;
    return cfg;
}

void add_common_options(CLI::App* sub, CliOptions& opt) {
    sub->add_option("config", opt.config_path, "path to a JSON run config")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory (overrides config)")
        ->envname("QDECO_OUT");
    sub->add_option("--threads", opt.threads, "sweep worker threads");
    sub->add_option("--assembly", opt.assembly, "master-equation assembly")
        ->check(CLI::IsMember({"spin_diagonal", "sojourn_blip_2x2"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdeco: non-Markovian qubit decoherence simulator (memory-kernel master "
                 "equations for 1D baths, with an exact-diagonalization cross-check)"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* cmd_run =
        app.add_subcommand("run", "simulate (optionally sweeping a bath parameter), write "
                                  "results.csv + manifest.json");
    CLI::App* cmd_oracle = app.add_subcommand(
        "oracle-compare", "compare the master equation against exact diagonalization");
    CLI::App* cmd_kernel =
        app.add_subcommand("dump-kernel", "write the bath kernel table as kernel.csv");
    CLI::App* cmd_conv =
        app.add_subcommand("convergence", "measure the integrator's convergence order");
    for (CLI::App* sub : {cmd_run, cmd_oracle, cmd_kernel, cmd_conv})
        add_common_options(sub, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        const qdeco::RunConfig cfg = load_with_overrides(opt);
        if (cmd_run->parsed()) return qdeco::run_simulation(cfg, std::cout);
        if (cmd_oracle->parsed()) return qdeco::run_oracle_compare(cfg, std::cout);
        if (cmd_kernel->parsed()) return qdeco::run_dump_kernel(cfg, std::cout);
        if (cmd_conv->parsed()) return qdeco::run_convergence(cfg, std::cout);
    } catch (const qdeco::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return qdeco::kExitConfigError;
    } catch (const qdeco::NonFiniteError& e) {
        std::cerr << "numerical instability: " << e.what() << '\n';
        return qdeco::kExitUnstable;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return qdeco::kExitConfigError;
    }
    return qdeco::kExitOk;
}
