#pragma once

#include "qdeco/kernels.hpp"
#include "qdeco/types.hpp"

namespace qdeco {

enum class InitialQubit { up, down, plus };

// Exact diagonalization of qubit + finite free bath in the
// excitation-conserving sector: dim N+1 for the single-excitation block,
// plus the decoupled zero-excitation state |down, vac>. coupling is the
// linear interaction strength (the master equation's g is its square).
struct OracleConfig {
    int n_sites = 1;
    double coupling = 0.0;
    double delta = 0.0;
    double mu = 0.0;
    double temperature = 0.0;
    Statistics statistics = Statistics::fermion;
    InitialQubit initial_qubit = InitialQubit::up;

    void validate() const;
};

// Reduced qubit density matrices on a uniform grid. Exact dynamics is
// trace-preserving, Hermitian and positive semidefinite at all times.
struct OracleTrajectory {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<Eigen::Matrix2cd> rho;

    double p_up(std::size_t i) const { return rho.at(i)(0, 0).real(); }
};

// Basis {|up, vac>, |down, site i>}: diagonal (delta/2, -delta/2 + bath
// hopping block with t = 1, periodic boundary), contact coupling between
// |up, vac> and |down, site 0>. A single site has no hopping bond.
Eigen::MatrixXd build_sector_hamiltonian(const OracleConfig& c);

// Spectral-decomposition propagation |psi(t)> = e^{-iHt}|psi(0)> and
// partial trace over the bath site index.
OracleTrajectory exact_evolve(const OracleConfig& c, double dt, int n_steps);

struct CompareReport {
    double max_abs_p_up = 0.0;
    double rms_p_up = 0.0;
    double max_rel_p_up = 0.0;
    double max_abs_p_dn = 0.0;
    double rms_p_dn = 0.0;
    double max_abs_coh = 0.0;
    double rms_coh = 0.0;

    bool within(double tol) const { return max_rel_p_up <= tol; }
};

// Per-observable max and RMS deviation between the oracle and a
// master-equation trajectory on a common grid. Throws GridMismatchError
// when the grids disagree.
CompareReport compare_trajectories(const OracleTrajectory& oracle, const Trajectory& master);

}  // namespace qdeco
