// Acceptance suite: prints one pass/fail line per criterion and exits with
// the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qdeco/observables.hpp"
#include "qdeco/oracle.hpp"
#include "qdeco/run.hpp"
#include "qdeco/volterra.hpp"

using namespace qdeco;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Eigen::Vector4cd state4(cplx a, cplx b, cplx c, cplx d) {
    Eigen::Vector4cd v;
    v << a, b, c, d;
    return v;
}

Trajectory run_rtn(double g, double j_c, double tau0, double dt, double t_max,
                   const Eigen::Vector4cd& x0) {
    const int n = static_cast<int>(std::lround(t_max / dt));
    return evolve(assemble_single_qubit({g, 0.0}, rtn_kernel({j_c, tau0}, dt, n)), x0, n);
}

// 1. RTN trace decay, and slower noise -> more mixed state.
Outcome criterion_trace_decay() {
    const std::vector<double> tau0s{0.5, 1.0, 2.0, 4.0, 8.0};
    double prev_final = std::numeric_limits<double>::infinity();
    double final_trace = 0.0;
    for (double tau0 : tau0s) {
        const Trajectory traj = run_rtn(0.01, 1.0, tau0, 0.01, 20.0, state4(1, 0, 0, 0));
        for (std::size_t i = 1; i < traj.states.size(); ++i) {
            if (!(traj.block(i).s_tr.real() < traj.block(i - 1).s_tr.real()))
                return {false, "trace not strictly decreasing at tau0=" + std::to_string(tau0)};
        }
        final_trace = traj.block(traj.states.size() - 1).s_tr.real();
        if (!(final_trace < prev_final))
            return {false, "final trace not decreasing in tau0 at tau0=" + std::to_string(tau0)};
        prev_final = final_trace;
    }
    std::ostringstream ss;
    ss << "strictly decreasing for all tau0; s_tr(20) ranges down to " << final_trace;
    return {true, ss.str()};
}

// 2. RTN self-excitation of the population-difference channel.
Outcome criterion_self_excitation() {
    const Trajectory traj = run_rtn(0.01, 1.0, 1.0, 0.01, 20.0, state4(0, 0, 0, 1));
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        if (!(traj.block(i).s_z.real() > traj.block(i - 1).s_z.real()))
            return {false, "s_z not strictly increasing at step " + std::to_string(i)};
    }
    std::ostringstream ss;
    ss << "s_z strictly increasing, s_z(20) = " << traj.block(traj.states.size() - 1).s_z.real();
    return {true, ss.str()};
}

// 3. Band bath: coherence decay within ripple, bounded oscillation.
Outcome criterion_coherence() {
    BandParams bp;
    bp.n_sites = 32;
    bp.mu = 0.0;
    bp.temperature = 0.0;
    const double dt = 0.005, t_max = 8.0;
    const int n = static_cast<int>(std::lround(t_max / dt));
    const KernelTable k = band_kernel(bp, dt, n);
    const VolterraSystem sys = assemble_single_qubit({0.01, 0.0}, k);

    const Trajectory decay = evolve(sys, state4(0, 1, 0, 0), n);
    double worst_increase = 0.0;
    for (std::size_t i = 1; i < decay.states.size(); ++i) {
        if (decay.times[i] <= 1.0) continue;
        const double inc =
            std::abs(decay.block(i).s_pm) - std::abs(decay.block(i - 1).s_pm);
        worst_increase = std::max(worst_increase, inc);
    }
    if (worst_increase > 1e-3)
        return {false, "s_pm magnitude rose by " + std::to_string(worst_increase)};

    const Trajectory osc = evolve(sys, state4(0, 0, 1, 0), n);
    double max_mp = 0.0;
    for (std::size_t i = 0; i < osc.states.size(); ++i)
        max_mp = std::max(max_mp, std::abs(osc.block(i).s_mp));
    if (max_mp > 1.0 + 1e-3) return {false, "max |s_mp| = " + std::to_string(max_mp)};

    std::ostringstream ss;
    ss << "|s_pm| non-increasing past t=1 (worst ripple " << worst_increase
       << "), max |s_mp| = " << max_mp;
    return {true, ss.str()};
}

// 4. Entropy bounds on a multi-band bath with genuine mixing.
Outcome criterion_entropy() {
    BandParams bp;
    bp.n_sites = 256;
    bp.mu = -3.0;
    bp.temperature = 0.5;
    bp.delta_b = 3.0;
    bp.n_bands = 2;
    bp.n_spins = 1;
    const double dt = 0.01, t_max = 30.0;
    const int n = static_cast<int>(std::lround(t_max / dt));
    const KernelTable k = multiband_kernel(bp, dt, n);
    const Trajectory traj = evolve(assemble_single_qubit({1.0, 0.0}, k), state4(1, 1, 1, 1), n);

    const double s0 = traj.observables.front().entropy;
    if (!(s0 < 1e-6)) return {false, "S(0) = " + std::to_string(s0)};
    double max_s = 0.0;
    for (const auto& o : traj.observables) max_s = std::max(max_s, o.entropy);
    if (!(max_s <= std::log(2.0) + 1e-6)) return {false, "max S = " + std::to_string(max_s)};
    const double s_end = traj.observables.back().entropy;
    if (!(s_end > 0.01)) return {false, "S(t_max) = " + std::to_string(s_end)};

    std::ostringstream ss;
    ss << "S(0) = " << s0 << ", max S = " << max_s << " <= ln 2, S(t_max) = " << s_end;
    return {true, ss.str()};
}

// 5. Integrator accuracy and measured order on the canonical benchmark.
Outcome criterion_integrator() {
    auto bench = [](double dt) {
        VolterraSystem sys;
        sys.dim = 1;
        sys.dt = dt;
        sys.a_local = Eigen::MatrixXcd::Zero(1, 1);
        sys.m_kernel.assign(static_cast<std::size_t>(std::lround(5.0 / dt)) + 1,
                            -Eigen::MatrixXcd::Ones(1, 1));
        return sys;
    };
    Eigen::VectorXcd x0(1);
    x0 << 1.0;
    const int n = 5000;
    const Trajectory traj = evolve(bench(1e-3), x0, n);
    double max_err = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i)
        max_err = std::max(max_err, std::abs(traj.states[i](0) - std::cos(traj.times[i])));
    if (!(max_err < 1e-4)) return {false, "max error vs cos t = " + std::to_string(max_err)};

    const double order = convergence_order(bench, x0, 0.02, 5.0);
    if (!(order > 1.8 && order < 2.2))
        return {false, "measured order = " + std::to_string(order)};

    std::ostringstream ss;
    ss << "max error = " << max_err << " < 1e-4, order = " << order;
    return {true, ss.str()};
}

double oracle_deviation(double g, double dt, double t_max) {
    BandParams bp;
    bp.n_sites = 8;
    bp.mu = -3.0;
    bp.temperature = 0.0;
    const int n = static_cast<int>(std::lround(t_max / dt));
    const Trajectory master = evolve(assemble_single_qubit({g, 0.0}, band_kernel(bp, dt, n)),
                                     state4(1, 0, 0, 1), n);
    OracleConfig oc;
    oc.n_sites = 8;
    oc.coupling = std::sqrt(g);
    oc.delta = 0.0;
    oc.mu = bp.mu;
    const OracleTrajectory oracle = exact_evolve(oc, dt, n);
    return compare_trajectories(oracle, master).max_rel_p_up;
}

// 6. Oracle equivalence at weak coupling, with the deviation shrinking in g.
Outcome criterion_oracle() {
    const double dev = oracle_deviation(0.0025, 0.005, 10.0);
    const double dev_small = oracle_deviation(0.000625, 0.005, 10.0);
    std::ostringstream ss;
    ss << "max rel dev p_up = " << dev << " (<= 0.05 required), at g/4 = " << dev_small
       << " (improvement x" << dev / dev_small << ", >= x2 required)";
    const bool pass = dev <= 0.05 && dev / dev_small >= 2.0;
    return {pass, ss.str()};
}

// 7. Exact limits: decoupled runs, the Rabi law, and the L = 1 chain.
Outcome criterion_exact_limits() {
    const Trajectory frozen =
        run_rtn(0.0, 1.0, 1.0, 0.01, 10.0, state4(0.9, cplx(0.2, 0.1), cplx(0.2, -0.1), 0.3));
    for (std::size_t i = 0; i < frozen.states.size(); ++i) {
        const SojournBlipState s = frozen.block(i);
        if (std::abs(s.s_tr - cplx(0.9, 0.0)) > 1e-10 ||
            std::abs(s.s_z - cplx(0.3, 0.0)) > 1e-10 ||
            std::abs(std::abs(s.s_pm) - std::abs(cplx(0.2, 0.1))) > 1e-10)
            return {false, "g = 0 run drifted"};
    }

    OracleConfig oc;
    oc.n_sites = 1;
    oc.coupling = 0.3;
    const OracleTrajectory rabi = exact_evolve(oc, 0.01, 1000);
    for (std::size_t i = 0; i < rabi.times.size(); ++i) {
        const double expected = std::pow(std::cos(oc.coupling * rabi.times[i]), 2);
        if (std::abs(rabi.p_up(i) - expected) > 1e-10)
            return {false, "N = 1 Rabi law violated at t = " + std::to_string(rabi.times[i])};
    }

    const int n = 500;
    const KernelTable k = rtn_kernel({1.0, 2.0}, 0.01, n);
    const PhysicalParams p{0.01, 0.4};
    ChainConfig chain;
    chain.n_qubits = 1;
    chain.delta = {0.4};
    chain.kernels = {k};
    const Trajectory single = evolve(assemble_single_qubit(p, k), state4(1, 1, 1, 1), n);
    const Trajectory chained = evolve(assemble_chain(p, chain), state4(1, 1, 1, 1), n);
    for (std::size_t i = 0; i < single.states.size(); ++i) {
        if ((single.states[i] - chained.states[i]).cwiseAbs().maxCoeff() > 1e-12)
            return {false, "L = 1 chain deviates from the single-qubit system"};
    }
    return {true, "g = 0 frozen to 1e-10; Rabi law to 1e-10; L = 1 chain to 1e-12"};
}

// 8. Kernel golden values.
Outcome criterion_kernel_values() {
    const KernelTable rtn = rtn_kernel({0.75, 1.0}, 0.1, 5);
    if (rtn.k_k[0] != cplx(0.0, 0.75)) return {false, "RTN K^K(0) != i J_C"};

    BandParams bp;
    bp.n_sites = 32;
    bp.mu = -0.5;
    bp.temperature = 0.3;
    const KernelTable band = band_kernel(bp, 0.05, 5);
    if (band.k_r[0] != cplx(0.0, -1.0)) return {false, "band K^R(0) != -i"};

    bp.n_bands = 2;
    bp.n_spins = 2;
    bp.delta_b = 0.0;
    const KernelTable multi = multiband_kernel(bp, 0.05, 5);
    for (std::size_t n = 0; n < band.size(); ++n) {
        if (std::abs(multi.k_k[n] - 4.0 * band.k_k[n]) > 1e-14 ||
            std::abs(multi.k_r[n] - 4.0 * band.k_r[n]) > 1e-14)
            return {false, "degenerate multiband != 4 x single band"};
    }
    return {true, "RTN K^K(0) = i J_C exactly; band K^R(0) = -i exactly; degenerate "
                  "multiband = 4 x single to 1e-14"};
}

// 9. Reproducibility of the CLI outputs.
Outcome criterion_reproducibility() {
    const fs::path base = fs::temp_directory_path() / "qdeco_acceptance";
    fs::remove_all(base);

    nlohmann::json j = {
        {"bath", {{"type", "rtn"}, {"j_c", 1.0}, {"tau0", 1.0}}},
        {"physical", {{"g", 0.01}, {"delta", 0.0}}},
        {"grid", {{"dt", 0.01}, {"t_max", 5.0}}},
        {"initial", {1.0, 0.0, 0.0, 0.0}},
        {"sweep", {{"parameter", "tau0"}, {"values", {0.5, 1.0, 2.0, 4.0, 8.0}}}},
    };
    RunConfig cfg = parse_run_config(j);
    std::ostringstream log;

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    cfg.output.dir = (base / "a").string();
    run_simulation(cfg, log);
    cfg.output.dir = (base / "b").string();
    cfg.threads = 4;
    run_simulation(cfg, log);
    if (slurp(base / "a" / "results.csv") != slurp(base / "b" / "results.csv"))
        return {false, "re-run of the identical config changed results.csv"};

    RunConfig replay = load_run_config((base / "a" / "manifest.json").string());
    replay.output.dir = (base / "c").string();
    run_simulation(replay, log);
    if (slurp(base / "a" / "results.csv") != slurp(base / "c" / "results.csv"))
        return {false, "manifest round-trip changed results.csv"};

    return {true, "byte-identical across re-runs and the manifest round-trip"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria{
        {"1 RTN trace decay / tau0 ordering", criterion_trace_decay},
        {"2 RTN self-excitation", criterion_self_excitation},
        {"3 band coherence decay / bounded oscillation", criterion_coherence},
        {"4 entropy bounds", criterion_entropy},
        {"5 integrator accuracy and order", criterion_integrator},
        {"6 oracle equivalence", criterion_oracle},
        {"7 exact limits", criterion_exact_limits},
        {"8 kernel golden values", criterion_kernel_values},
        {"9 reproducibility", criterion_reproducibility},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %s: %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", c.name,
                    out.detail.c_str(), secs);
        if (!out.pass) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    return failures;
}
