#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qdeco/kernels.hpp"
#include "qdeco/oracle.hpp"
#include "qdeco/types.hpp"
#include "qdeco/volterra.hpp"

namespace qdeco {

enum class BathType { rtn, band, multiband };

struct GridSpec {
    double dt = 0.01;
    double t_max = 10.0;
};

struct SweepSpec {
    std::string parameter;  // tau0 | mu | delta_b | temperature
    std::vector<double> values;
};

struct OutputSpec {
    std::string dir = ".";
    bool plot = true;
};

struct OracleSpec {
    InitialQubit initial_qubit = InitialQubit::up;
    double tolerance = 0.05;
};

// Fully resolved run description; serializes to the manifest, which is
// itself a valid config file.
struct RunConfig {
    BathType bath_type = BathType::rtn;
    RtnParams rtn;
    BandParams band;
    PhysicalParams physical;
    GridSpec grid;
    SojournBlipState initial{1.0, 0.0, 0.0, 0.0};
    Assembly assembly = Assembly::spin_diagonal;
    bool compare_assemblies = false;
    std::optional<SweepSpec> sweep;
    OutputSpec output;
    OracleSpec oracle;
    unsigned threads = 1;

    int n_steps() const;
};

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

// Throws ConfigError on hard errors; returns human-readable warnings
// (e.g. the finite-size horizon rule t_max < N/4 for band baths).
std::vector<std::string> validate_config(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

std::string to_string(BathType t);
std::string to_string(Assembly a);
std::string to_string(Statistics s);
std::string to_string(InitialQubit q);
Assembly assembly_from_string(const std::string& s);

}  // namespace qdeco
