#pragma once

#include <iosfwd>

#include "qdeco/config.hpp"
#include "qdeco/io.hpp"

namespace qdeco {

// Exit codes shared by the library drivers and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitUnstable = 2;
inline constexpr int kExitToleranceExceeded = 3;

// Kernel table for the configured bath over n_steps grid points.
KernelTable build_kernel(const RunConfig& cfg, int n_steps);

// Bath config with one sweep parameter overridden.
RunConfig with_sweep_value(const RunConfig& cfg, const std::string& parameter, double value);

// Drivers behind the CLI subcommands. Each validates, simulates and writes
// its files into cfg.output.dir; diagnostics go to `log`. ConfigError /
// NonFiniteError propagate to the caller (the CLI maps them to exit codes).
int run_simulation(const RunConfig& cfg, std::ostream& log);
int run_oracle_compare(const RunConfig& cfg, std::ostream& log);
int run_dump_kernel(const RunConfig& cfg, std::ostream& log);
int run_convergence(const RunConfig& cfg, std::ostream& log);

}  // namespace qdeco
