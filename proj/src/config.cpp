#include "qdeco/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace qdeco {

using nlohmann::json;

namespace {

cplx parse_component(const json& v, const char* what) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cplx(v[0].get<double>(), v[1].get<double>());
    throw ConfigError(std::string(what) + ": expected a number or [re, im]");
}

json dump_component(cplx c) {
    if (c.imag() == 0.0) return json(c.real());
    return json::array({c.real(), c.imag()});
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

Statistics statistics_from_string(const std::string& s) {
    if (s == "fermion") return Statistics::fermion;
    if (s == "boson") return Statistics::boson;
    throw ConfigError("bath.statistics must be 'fermion' or 'boson'");
}

InitialQubit initial_qubit_from_string(const std::string& s) {
    if (s == "up") return InitialQubit::up;
    if (s == "down") return InitialQubit::down;
    if (s == "plus") return InitialQubit::plus;
    throw ConfigError("oracle.initial_qubit must be 'up', 'down' or 'plus'");
}

}  // namespace

std::string to_string(BathType t) {
    switch (t) {
        case BathType::rtn: return "rtn";
        case BathType::band: return "band";
        case BathType::multiband: return "multiband";
    }
    return "?";
}

std::string to_string(Assembly a) {
    return a == Assembly::spin_diagonal ? "spin_diagonal" : "sojourn_blip_2x2";
}

std::string to_string(Statistics s) {
    return s == Statistics::fermion ? "fermion" : "boson";
}

std::string to_string(InitialQubit q) {
    switch (q) {
        case InitialQubit::up: return "up";
        case InitialQubit::down: return "down";
        case InitialQubit::plus: return "plus";
    }
    return "?";
}

Assembly assembly_from_string(const std::string& s) {
    if (s == "spin_diagonal") return Assembly::spin_diagonal;
    if (s == "sojourn_blip_2x2") return Assembly::sojourn_blip_2x2;
    throw ConfigError("assembly must be 'spin_diagonal' or 'sojourn_blip_2x2'");
}

int RunConfig::n_steps() const {
    return static_cast<int>(std::lround(grid.t_max / grid.dt));
}

RunConfig parse_run_config(const json& j) {
    RunConfig cfg;
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    if (!j.contains("bath") || !j.at("bath").is_object())
        throw ConfigError("config: missing 'bath' object");

    const json& bath = j.at("bath");
    const std::string type = get_or<std::string>(bath, "type", "");
    if (type == "rtn") {
        cfg.bath_type = BathType::rtn;
        cfg.rtn.j_c = get_or(bath, "j_c", cfg.rtn.j_c);
        cfg.rtn.tau0 = get_or(bath, "tau0", cfg.rtn.tau0);
    } else if (type == "band" || type == "multiband") {
        cfg.bath_type = type == "band" ? BathType::band : BathType::multiband;
        cfg.band.statistics =
            statistics_from_string(get_or<std::string>(bath, "statistics", "fermion"));
        cfg.band.n_sites = get_or(bath, "n_sites", cfg.band.n_sites);
        cfg.band.mu = get_or(bath, "mu", cfg.band.mu);
        cfg.band.temperature = get_or(bath, "temperature", cfg.band.temperature);
        cfg.band.delta_b = get_or(bath, "delta_b", cfg.band.delta_b);
        cfg.band.n_bands = get_or(bath, "n_bands", cfg.bath_type == BathType::multiband ? 2 : 1);
        cfg.band.n_spins = get_or(bath, "n_spins", cfg.band.n_spins);
        cfg.band.site_separation = get_or(bath, "site_separation", cfg.band.site_separation);
    } else {
        throw ConfigError("bath.type must be 'rtn', 'band' or 'multiband'");
    }

    if (j.contains("physical")) {
        cfg.physical.g = get_or(j.at("physical"), "g", cfg.physical.g);
        cfg.physical.delta = get_or(j.at("physical"), "delta", cfg.physical.delta);
    }
    if (j.contains("grid")) {
        cfg.grid.dt = get_or(j.at("grid"), "dt", cfg.grid.dt);
        cfg.grid.t_max = get_or(j.at("grid"), "t_max", cfg.grid.t_max);
    }
    if (j.contains("initial")) {
        const json& init = j.at("initial");
        if (!init.is_array() || init.size() != 4)
            throw ConfigError("initial must be an array of 4 components");
        cfg.initial.s_tr = parse_component(init[0], "initial[0]");
        cfg.initial.s_pm = parse_component(init[1], "initial[1]");
        cfg.initial.s_mp = parse_component(init[2], "initial[2]");
        cfg.initial.s_z = parse_component(init[3], "initial[3]");
    }
    cfg.assembly = assembly_from_string(get_or<std::string>(j, "assembly", "spin_diagonal"));
    cfg.compare_assemblies = get_or(j, "compare_assemblies", false);
    if (j.contains("sweep") && !j.at("sweep").is_null()) {
        SweepSpec sweep;
        sweep.parameter = get_or<std::string>(j.at("sweep"), "parameter", "");
        sweep.values = get_or(j.at("sweep"), "values", std::vector<double>{});
        cfg.sweep = sweep;
    }
    if (j.contains("output")) {
        cfg.output.dir = get_or<std::string>(j.at("output"), "dir", cfg.output.dir);
        cfg.output.plot = get_or(j.at("output"), "plot", cfg.output.plot);
    }
    if (j.contains("oracle")) {
        cfg.oracle.initial_qubit =
            initial_qubit_from_string(get_or<std::string>(j.at("oracle"), "initial_qubit", "up"));
        cfg.oracle.tolerance = get_or(j.at("oracle"), "tolerance", cfg.oracle.tolerance);
    }
    cfg.threads = get_or(j, "threads", cfg.threads);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_run_config(j);
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    if (!(cfg.grid.dt > 0.0)) throw ConfigError("grid.dt must be > 0");
    if (!(cfg.grid.t_max > cfg.grid.dt)) throw ConfigError("grid.t_max must be > dt");
    cfg.physical.validate();

    const bool band_like = cfg.bath_type != BathType::rtn;
    if (cfg.bath_type == BathType::rtn) {
        cfg.rtn.validate();
    } else {
        cfg.band.validate();
        double band_bottom = -2.0;
        if (cfg.bath_type == BathType::multiband && cfg.band.n_bands == 2)
            band_bottom = -2.0 - std::abs(cfg.band.delta_b);
        if (cfg.band.statistics == Statistics::boson && cfg.band.mu >= band_bottom)
            throw ConfigError("boson bath requires mu below the band bottom");
        // Finite-size horizon: recurrences appear past N / (2 v_max), v_max = 2.
        const double horizon = static_cast<double>(cfg.band.n_sites) / 4.0;
        if (cfg.grid.t_max >= horizon)
            warnings.push_back("t_max >= n_sites/4: expect finite-size recurrences from the periodic bath");
    }

    if (cfg.sweep) {
        if (cfg.sweep->values.empty()) throw ConfigError("sweep.values must be non-empty");
        const std::string& p = cfg.sweep->parameter;
        static const std::set<std::string> known{"tau0", "mu", "delta_b", "temperature"};
        if (!known.count(p)) throw ConfigError("unknown sweep parameter: '" + p + "'");
        if (p == "tau0" && cfg.bath_type != BathType::rtn)
            throw ConfigError("sweep parameter 'tau0' requires an rtn bath");
        if ((p == "mu" || p == "temperature") && !band_like)
            throw ConfigError("sweep parameter '" + p + "' requires a band bath");
        if (p == "delta_b" && cfg.bath_type != BathType::multiband)
            throw ConfigError("sweep parameter 'delta_b' requires a multiband bath");
    }
    if (!(cfg.oracle.tolerance > 0.0)) throw ConfigError("oracle.tolerance must be > 0");
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    return warnings;
}

json to_json(const RunConfig& cfg) {
    json bath;
    bath["type"] = to_string(cfg.bath_type);
    if (cfg.bath_type == BathType::rtn) {
        bath["j_c"] = cfg.rtn.j_c;
        bath["tau0"] = cfg.rtn.tau0;
    } else {
        bath["statistics"] = to_string(cfg.band.statistics);
        bath["n_sites"] = cfg.band.n_sites;
        bath["mu"] = cfg.band.mu;
        bath["temperature"] = cfg.band.temperature;
        bath["delta_b"] = cfg.band.delta_b;
        bath["n_bands"] = cfg.band.n_bands;
        bath["n_spins"] = cfg.band.n_spins;
        bath["site_separation"] = cfg.band.site_separation;
    }
    json j;
    j["bath"] = bath;
    j["physical"] = {{"g", cfg.physical.g}, {"delta", cfg.physical.delta}};
    j["grid"] = {{"dt", cfg.grid.dt}, {"t_max", cfg.grid.t_max}};
    j["initial"] = json::array({dump_component(cfg.initial.s_tr), dump_component(cfg.initial.s_pm),
                                dump_component(cfg.initial.s_mp), dump_component(cfg.initial.s_z)});
    j["assembly"] = to_string(cfg.assembly);
    j["compare_assemblies"] = cfg.compare_assemblies;
    if (cfg.sweep)
        j["sweep"] = {{"parameter", cfg.sweep->parameter}, {"values", cfg.sweep->values}};
    j["output"] = {{"dir", cfg.output.dir}, {"plot", cfg.output.plot}};
    j["oracle"] = {{"initial_qubit", to_string(cfg.oracle.initial_qubit)},
                   {"tolerance", cfg.oracle.tolerance}};
    j["threads"] = cfg.threads;
    return j;
}

}  // namespace qdeco
