#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qdeco/oracle.hpp"
#include "qdeco/volterra.hpp"

using namespace qdeco;

TEST_CASE("build_sector_hamiltonian: N = 1 two-level block") {
    OracleConfig c;
    c.n_sites = 1;
    c.coupling = 1.0;
    c.delta = 0.0;
    const Eigen::MatrixXd h = build_sector_hamiltonian(c);
    REQUIRE(h.rows() == 2);
    CHECK(h(0, 0) == 0.0);
    CHECK(h(1, 1) == 0.0);
    CHECK(h(0, 1) == 1.0);
    CHECK(h(1, 0) == 1.0);
}

TEST_CASE("build_sector_hamiltonian: coupling = 0 leaves a block-diagonal matrix") {
    OracleConfig c;
    c.n_sites = 4;
    c.coupling = 0.0;
    c.delta = 0.8;
    const Eigen::MatrixXd h = build_sector_hamiltonian(c);
    CHECK(h.row(0).tail(4).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h.col(0).tail(4).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h(0, 0) == 0.4);
}

TEST_CASE("build_sector_hamiltonian: N = 2 eigenvalues match a hand-built 3x3") {
    OracleConfig c;
    c.n_sites = 2;
    c.coupling = 0.1;
    c.delta = 0.0;
    const Eigen::MatrixXd h = build_sector_hamiltonian(c);

    // index enumeration: |up,vac>, |dn,0>, |dn,1>; the two periodic bonds
    // between sites 0 and 1 stack to -2.
    Eigen::Matrix3d expected;
    expected << 0.0, 0.1, 0.0,  //
        0.1, 0.0, -2.0,         //
        0.0, -2.0, 0.0;
    CHECK((h - expected).cwiseAbs().maxCoeff() == 0.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sa(h), sb(expected);
    CHECK((sa.eigenvalues() - sb.eigenvalues()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("exact_evolve: N = 1 Rabi law to 1e-10") {
    OracleConfig c;
    c.n_sites = 1;
    c.coupling = 0.35;
    c.delta = 0.0;
    const OracleTrajectory traj = exact_evolve(c, 0.01, 1000);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double expected = std::pow(std::cos(c.coupling * traj.times[i]), 2);
        CHECK(std::abs(traj.p_up(i) - expected) < 1e-10);
    }
}

TEST_CASE("exact_evolve: coupling = 0 freezes the reduced matrix") {
    OracleConfig c;
    c.n_sites = 5;
    c.coupling = 0.0;
    c.delta = 1.3;
    for (InitialQubit init : {InitialQubit::up, InitialQubit::down}) {
        c.initial_qubit = init;
        const OracleTrajectory traj = exact_evolve(c, 0.05, 100);
        for (std::size_t i = 0; i < traj.times.size(); ++i)
            CHECK((traj.rho[i] - traj.rho[0]).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("exact_evolve: reduced matrices are Hermitian, unit trace, PSD") {
    OracleConfig c;
    c.n_sites = 8;
    c.coupling = 0.4;
    c.delta = 0.5;
    c.initial_qubit = InitialQubit::plus;
    const OracleTrajectory traj = exact_evolve(c, 0.02, 500);
    for (const auto& rho : traj.rho) {
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(rho.trace() - cplx(1.0, 0.0)) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> s(rho, Eigen::EigenvaluesOnly);
        CHECK(s.eigenvalues()(0) >= -1e-12);
    }
}

TEST_CASE("exact_evolve: norm and energy conservation") {
    OracleConfig c;
    c.n_sites = 8;
    c.coupling = 0.3;
    c.delta = 0.2;
    const Eigen::MatrixXd h = build_sector_hamiltonian(c);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const Eigen::VectorXd& w = solver.eigenvalues();
    const Eigen::MatrixXd& v = solver.eigenvectors();
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(h.rows());
    x0(0) = 1.0;
    const Eigen::VectorXd modes = v.transpose() * x0;
    const double e0 = modes.cwiseAbs2().dot(w);
    for (double t : {0.0, 1.7, 6.3, 20.0}) {
        Eigen::VectorXcd psi(h.rows());
        for (Eigen::Index a = 0; a < w.size(); ++a)
            psi(a) = modes(a) * std::polar(1.0, -w(a) * t);
        const Eigen::VectorXcd phi = v * psi;
        CHECK(std::abs(phi.norm() - 1.0) < 1e-12);
        const double energy = (phi.adjoint() * (h * phi))(0).real();
        CHECK(std::abs(energy - e0) < 1e-10);
    }
}

TEST_CASE("exact_evolve: plus state keeps an oscillating coherence") {
    OracleConfig c;
    c.n_sites = 4;
    c.coupling = 0.0;
    c.delta = 2.0;
    c.initial_qubit = InitialQubit::plus;
    const OracleTrajectory traj = exact_evolve(c, 0.01, 200);
    // with no coupling the coherence is e^{-i delta t}/2
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const cplx expected = 0.5 * std::polar(1.0, -c.delta * traj.times[i]);
        CHECK(std::abs(traj.rho[i](0, 1) - expected) < 1e-12);
    }
}

TEST_CASE("compare_trajectories: identical inputs give zero deviation") {
    OracleConfig c;
    c.n_sites = 4;
    c.coupling = 0.0;
    c.delta = 0.0;
    const int n = 100;
    const OracleTrajectory oracle = exact_evolve(c, 0.05, n);

    const KernelTable k = band_kernel(BandParams{Statistics::fermion, 4, -3.0, 0.0}, 0.05, n);
    const VolterraSystem sys = assemble_single_qubit({0.0, 0.0}, k);
    Eigen::Vector4cd x0;
    x0 << 1, 0, 0, 1;
    const Trajectory master = evolve(sys, x0, n);

    const CompareReport rep = compare_trajectories(oracle, master);
    CHECK(rep.max_abs_p_up < 1e-12);
    CHECK(rep.max_abs_p_dn < 1e-12);
    CHECK(rep.max_abs_coh < 1e-12);
    CHECK(rep.within(0.05));
}

TEST_CASE("compare_trajectories: grid mismatch is rejected") {
    OracleConfig c;
    c.n_sites = 2;
    const OracleTrajectory oracle = exact_evolve(c, 0.05, 10);
    const KernelTable k = rtn_kernel({1.0, 1.0}, 0.05, 20);
    Eigen::Vector4cd x0;
    x0 << 1, 0, 0, 1;
    const Trajectory longer = evolve(assemble_single_qubit({0.0, 0.0}, k), x0, 20);
    CHECK_THROWS_AS(compare_trajectories(oracle, longer), GridMismatchError);

    const KernelTable k2 = rtn_kernel({1.0, 1.0}, 0.1, 10);
    const Trajectory coarser = evolve(assemble_single_qubit({0.0, 0.0}, k2), x0, 10);
    CHECK_THROWS_AS(compare_trajectories(oracle, coarser), GridMismatchError);
}

TEST_CASE("contrast: master trace drift grows with g, oracle trace is exact") {
    // the exact dynamics conserves the trace; the memory-kernel equation
    // does not, and its drift must vanish as g -> 0
    BandParams bp;
    bp.n_sites = 8;
    bp.mu = -3.0;
    bp.temperature = 0.0;
    const int n = 500;
    const double dt = 0.01;

    double prev_drift = std::numeric_limits<double>::infinity();
    for (double g : {0.4, 0.1, 0.025}) {
        const Trajectory master = evolve(assemble_single_qubit({g, 0.0}, band_kernel(bp, dt, n)),
                                         (Eigen::Vector4cd() << 1, 0, 0, 1).finished(), n);
        double drift = 0.0;
        for (std::size_t i = 0; i < master.states.size(); ++i)
            drift = std::max(drift, std::abs(master.block(i).s_tr - cplx(1.0, 0.0)));
        CHECK(drift < prev_drift);
        prev_drift = drift;
    }

    OracleConfig oc;
    oc.n_sites = 8;
    oc.coupling = std::sqrt(0.4);
    const OracleTrajectory oracle = exact_evolve(oc, dt, n);
    for (std::size_t i = 0; i < oracle.rho.size(); ++i)
        CHECK(std::abs(oracle.rho[i].trace() - cplx(1.0, 0.0)) < 1e-12);
}
