#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdeco/config.hpp"
#include "qdeco/kernels.hpp"
#include "qdeco/types.hpp"

namespace qdeco {

// One CSV row per (sweep value, grid point).
struct ResultRow {
    std::optional<double> sweep_value;
    double time = 0.0;
    SojournBlipState state;
    Observables obs;
};

// Fixed-format double, locale-independent; identical configs produce
// byte-identical files.
std::string fmt_double(double v);

// RFC-4180 quoting: fields containing comma, quote or newline are quoted,
// embedded quotes doubled.
std::string csv_escape(const std::string& field);

extern const char* const kResultsHeader;

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);
void write_kernel_csv(const std::string& path, const KernelTable& table);
void write_manifest(const std::string& path, const RunConfig& cfg);
void write_plot_script(const std::string& path, const RunConfig& cfg);

std::string join_path(const std::string& dir, const std::string& name);

}  // namespace qdeco
