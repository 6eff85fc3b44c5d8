#include "qdeco/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "qdeco/observables.hpp"
#include "qdeco/oracle.hpp"
#include "qdeco/volterra.hpp"

namespace qdeco {

KernelTable build_kernel(const RunConfig& cfg, int n_steps) {
    switch (cfg.bath_type) {
        case BathType::rtn: return rtn_kernel(cfg.rtn, cfg.grid.dt, n_steps);
        case BathType::band: return band_kernel(cfg.band, cfg.grid.dt, n_steps);
        case BathType::multiband: return multiband_kernel(cfg.band, cfg.grid.dt, n_steps);
    }
    throw ConfigError("unknown bath type");
}

RunConfig with_sweep_value(const RunConfig& cfg, const std::string& parameter, double value) {
    RunConfig out = cfg;
    if (parameter == "tau0")
        out.rtn.tau0 = value;
    else if (parameter == "mu")
        out.band.mu = value;
    else if (parameter == "delta_b")
        out.band.delta_b = value;
    else if (parameter == "temperature")
        out.band.temperature = value;
    else
        throw ConfigError("unknown sweep parameter: '" + parameter + "'");
    return out;
}

namespace {

Trajectory simulate_point(const RunConfig& cfg, Assembly assembly) {
    const int n_steps = cfg.n_steps();
    const KernelTable kernel = build_kernel(cfg, n_steps);
    const VolterraSystem sys = assemble_single_qubit(cfg.physical, kernel, assembly);
    return evolve(sys, cfg.initial.to_vector(), n_steps);
}

void ensure_output_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw SimError("cannot create output directory: " + dir);
}

}  // namespace

int run_simulation(const RunConfig& cfg, std::ostream& log) {
    for (const auto& w : validate_config(cfg)) log << "warning: " << w << '\n';
    ensure_output_dir(cfg.output.dir);

    struct Point {
        std::optional<double> sweep_value;
        RunConfig cfg;
    };
    std::vector<Point> points;
    if (cfg.sweep) {
        std::vector<double> values = cfg.sweep->values;
        std::stable_sort(values.begin(), values.end());
        for (double v : values)
            points.push_back({v, with_sweep_value(cfg, cfg.sweep->parameter, v)});
    } else {
        points.push_back({std::nullopt, cfg});
    }

    std::vector<std::vector<ResultRow>> per_point(points.size());
    std::vector<std::optional<double>> assembly_gap(points.size());

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(points.size());
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                const Point& pt = points[i];
                const Trajectory traj = simulate_point(pt.cfg, cfg.assembly);
                if (cfg.compare_assemblies) {
                    const Assembly other = cfg.assembly == Assembly::spin_diagonal
                                               ? Assembly::sojourn_blip_2x2
                                               : Assembly::spin_diagonal;
                    const Trajectory alt = simulate_point(pt.cfg, other);
                    double gap = 0.0;
                    for (std::size_t s = 0; s < traj.states.size(); ++s)
                        gap = std::max(gap,
                                       (traj.states[s] - alt.states[s]).cwiseAbs().maxCoeff());
                    assembly_gap[i] = gap;
                }
                auto& rows = per_point[i];
                rows.reserve(traj.times.size());
                for (std::size_t s = 0; s < traj.times.size(); ++s)
                    rows.push_back(
                        {pt.sweep_value, traj.times[s], traj.block(s), traj.observables[s]});
            } catch (...) {
                errors[i] = std::current_exception();
                return;
            }
        }
    };

    const unsigned n_threads =
        std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(points.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<ResultRow> rows;
    for (const auto& pr : per_point) rows.insert(rows.end(), pr.begin(), pr.end());

    write_results_csv(join_path(cfg.output.dir, "results.csv"), rows);
    write_manifest(join_path(cfg.output.dir, "manifest.json"), cfg);
    if (cfg.output.plot) write_plot_script(join_path(cfg.output.dir, "plot.gp"), cfg);

    if (cfg.compare_assemblies) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!assembly_gap[i]) continue;
            log << "assembly disagreement (spin_diagonal vs sojourn_blip_2x2)";
            if (points[i].sweep_value) log << " at " << cfg.sweep->parameter << "=" << *points[i].sweep_value;
            log << ": max |delta| = " << *assembly_gap[i] << '\n';
        }
    }
    log << "wrote " << rows.size() << " rows to " << join_path(cfg.output.dir, "results.csv")
        << '\n';
    return kExitOk;
}

int run_oracle_compare(const RunConfig& cfg, std::ostream& log) {
    for (const auto& w : validate_config(cfg)) log << "warning: " << w << '\n';
    if (cfg.bath_type != BathType::band)
        throw ConfigError("oracle-compare requires a band bath");
    if (cfg.band.temperature != 0.0)
        throw ConfigError("oracle-compare requires T = 0 (finite-T oracle is out of scope)");
    if (cfg.band.mu >= -2.0)
        throw ConfigError("oracle-compare requires an empty band (mu < -2)");
    if (cfg.band.site_separation != 0)
        throw ConfigError("oracle-compare requires the on-site kernel (site_separation = 0)");
    if (cfg.band.n_sites > 12)
        throw ConfigError("oracle-compare: n_sites must be <= 12 (exact-diagonalization scale)");
    ensure_output_dir(cfg.output.dir);

    const int n_steps = cfg.n_steps();

    OracleConfig oc;
    oc.n_sites = cfg.band.n_sites;
    oc.coupling = std::sqrt(cfg.physical.g);
    oc.delta = cfg.physical.delta;
    oc.mu = cfg.band.mu;
    oc.temperature = cfg.band.temperature;
    oc.statistics = cfg.band.statistics;
    oc.initial_qubit = cfg.oracle.initial_qubit;
    const OracleTrajectory oracle = exact_evolve(oc, cfg.grid.dt, n_steps);

    RunConfig master_cfg = cfg;
    switch (cfg.oracle.initial_qubit) {
        case InitialQubit::up: master_cfg.initial = {1.0, 0.0, 0.0, 1.0}; break;
        case InitialQubit::down: master_cfg.initial = {1.0, 0.0, 0.0, -1.0}; break;
        case InitialQubit::plus: master_cfg.initial = {1.0, 0.5, 0.5, 0.0}; break;
    }
    const Trajectory master = simulate_point(master_cfg, cfg.assembly);
    const CompareReport rep = compare_trajectories(oracle, master);

    std::ofstream out(join_path(cfg.output.dir, "compare.csv"), std::ios::binary);
    if (!out) throw SimError("cannot write compare.csv");
    out << "time,p_up_oracle,p_up_master,p_dn_oracle,p_dn_master,coh_oracle,coh_master,"
           "dev_p_up,rel_dev_p_up\n";
    for (std::size_t i = 0; i < oracle.times.size(); ++i) {
        const QubitMatrix rm = reconstruct(master.block(i));
        const Eigen::Matrix2cd& ro = oracle.rho[i];
        const double dev = std::abs(rm(0, 0).real() - ro(0, 0).real());
        out << fmt_double(oracle.times[i]) << ',' << fmt_double(ro(0, 0).real()) << ','
            << fmt_double(rm(0, 0).real()) << ',' << fmt_double(ro(1, 1).real()) << ','
            << fmt_double(rm(1, 1).real()) << ',' << fmt_double(std::abs(ro(0, 1))) << ','
            << fmt_double(std::abs(rm(0, 1))) << ',' << fmt_double(dev) << ','
            << fmt_double(dev / std::max(std::abs(ro(0, 0).real()), 1e-12)) << '\n';
    }

    log << "oracle compare: max rel dev p_up = " << rep.max_rel_p_up
        << " (tolerance " << cfg.oracle.tolerance << ")"
        << ", max abs dev p_up = " << rep.max_abs_p_up << ", rms = " << rep.rms_p_up << '\n';
    return rep.within(cfg.oracle.tolerance) ? kExitOk : kExitToleranceExceeded;
}

int run_dump_kernel(const RunConfig& cfg, std::ostream& log) {
    for (const auto& w : validate_config(cfg)) log << "warning: " << w << '\n';
    ensure_output_dir(cfg.output.dir);
    const KernelTable table = build_kernel(cfg, cfg.n_steps());
    write_kernel_csv(join_path(cfg.output.dir, "kernel.csv"), table);
    log << "wrote " << table.size() << " kernel samples to "
        << join_path(cfg.output.dir, "kernel.csv") << '\n';
    return kExitOk;
}

int run_convergence(const RunConfig& cfg, std::ostream& log) {
    for (const auto& w : validate_config(cfg)) log << "warning: " << w << '\n';
    auto make_system = [&cfg](double dt) {
        RunConfig c = cfg;
        c.grid.dt = dt;
        const int n = static_cast<int>(std::lround(c.grid.t_max / dt));
        return assemble_single_qubit(c.physical, build_kernel(c, n), c.assembly);
    };
    const double order =
        convergence_order(make_system, cfg.initial.to_vector(), cfg.grid.dt, cfg.grid.t_max);
    log << "measured convergence order: " << order << '\n';
    return kExitOk;
}

}  // namespace qdeco
