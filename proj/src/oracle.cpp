#include "qdeco/oracle.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qdeco/observables.hpp"

namespace qdeco {

void OracleConfig::validate() const {
    if (n_sites < 1) throw ConfigError("oracle: n_sites must be >= 1");
    if (!std::isfinite(coupling)) throw ConfigError("oracle: coupling must be finite");
    if (!std::isfinite(delta)) throw ConfigError("oracle: delta must be finite");
}

Eigen::MatrixXd build_sector_hamiltonian(const OracleConfig& c) {
    c.validate();
    const int n = c.n_sites;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
    h(0, 0) = 0.5 * c.delta;
    for (int i = 0; i < n; ++i) h(1 + i, 1 + i) = -0.5 * c.delta;
    if (n >= 2) {
        for (int i = 0; i < n; ++i) {
            const int j = (i + 1) % n;
            h(1 + i, 1 + j) += -1.0;
            h(1 + j, 1 + i) += -1.0;
        }
    }
    h(0, 1) += c.coupling;
    h(1, 0) += c.coupling;
    return h;
}

OracleTrajectory exact_evolve(const OracleConfig& c, double dt, int n_steps) {
    if (!(dt > 0.0)) throw ConfigError("oracle: dt must be > 0");
    if (n_steps < 1) throw ConfigError("oracle: n_steps must be >= 1");

    const Eigen::MatrixXd h = build_sector_hamiltonian(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const Eigen::VectorXd& w = solver.eigenvalues();
    const Eigen::MatrixXd& v = solver.eigenvectors();

    // Amplitude split between the decoupled |down, vac> state and the
    // single-excitation sector started in |up, vac>.
    double vac_amp = 0.0, sector_amp = 0.0;
    switch (c.initial_qubit) {
        case InitialQubit::up:
            sector_amp = 1.0;
            break;
        case InitialQubit::down:
            vac_amp = 1.0;
            break;
        case InitialQubit::plus:
            vac_amp = sector_amp = 1.0 / std::sqrt(2.0);
            break;
    }
    const Eigen::VectorXd mode_weights = v.row(0).transpose() * sector_amp;

    OracleTrajectory traj;
    traj.dt = dt;
    traj.times.resize(static_cast<std::size_t>(n_steps) + 1);
    traj.rho.resize(traj.times.size());
    Eigen::VectorXcd psi(h.rows());
    for (int step = 0; step <= n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        traj.times[static_cast<std::size_t>(step)] = t;
        for (Eigen::Index a = 0; a < w.size(); ++a)
            psi(a) = mode_weights(a) * std::polar(1.0, -w(a) * t);
        const Eigen::VectorXcd phi = v * psi;

        const cplx a_up = phi(0);
        const cplx a_vac = vac_amp * std::polar(1.0, +0.5 * c.delta * t);
        const double bath_weight = phi.tail(c.n_sites).squaredNorm();

        Eigen::Matrix2cd rho;
        rho(0, 0) = std::norm(a_up);
        rho(1, 1) = std::norm(a_vac) + bath_weight;
        rho(0, 1) = a_up * std::conj(a_vac);
        rho(1, 0) = std::conj(rho(0, 1));
        traj.rho[static_cast<std::size_t>(step)] = rho;
    }
    return traj;
}

CompareReport compare_trajectories(const OracleTrajectory& oracle, const Trajectory& master) {
    if (oracle.times.size() != master.times.size())
        throw GridMismatchError("compare: trajectories have different lengths");
    if (std::abs(oracle.dt - master.dt) > 1e-12)
        throw GridMismatchError("compare: trajectories have different dt");

    CompareReport rep;
    double sq_up = 0.0, sq_dn = 0.0, sq_coh = 0.0;
    const std::size_t n = oracle.times.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Matrix2cd& ro = oracle.rho[i];
        const QubitMatrix rm = reconstruct(master.block(i));
        const double d_up = std::abs(rm(0, 0).real() - ro(0, 0).real());
        const double d_dn = std::abs(rm(1, 1).real() - ro(1, 1).real());
        const double d_coh = std::abs(std::abs(rm(0, 1)) - std::abs(ro(0, 1)));
        rep.max_abs_p_up = std::max(rep.max_abs_p_up, d_up);
        rep.max_abs_p_dn = std::max(rep.max_abs_p_dn, d_dn);
        rep.max_abs_coh = std::max(rep.max_abs_coh, d_coh);
        rep.max_rel_p_up =
            std::max(rep.max_rel_p_up, d_up / std::max(std::abs(ro(0, 0).real()), 1e-12));
        sq_up += d_up * d_up;
        sq_dn += d_dn * d_dn;
        sq_coh += d_coh * d_coh;
    }
    rep.rms_p_up = std::sqrt(sq_up / static_cast<double>(n));
    rep.rms_p_dn = std::sqrt(sq_dn / static_cast<double>(n));
    rep.rms_coh = std::sqrt(sq_coh / static_cast<double>(n));
    return rep;
}

}  // namespace qdeco
