#pragma once

#include <functional>

#include "qdeco/kernels.hpp"
#include "qdeco/types.hpp"

namespace qdeco {

// Complex linear Volterra integro-differential system
//   dx/dt = a_local * x(t) + int_0^t M(t - t1) * x(t1) dt1
// with the memory kernel sampled as m_kernel[n] = M(n * dt).
struct VolterraSystem {
    Eigen::Index dim = 0;
    Eigen::MatrixXcd a_local;
    std::vector<Eigen::MatrixXcd> m_kernel;
    double dt = 0.0;

    void validate() const;
};

// 1D qubit chain: per-site level splittings and one kernel table per site
// separation 0 .. n_qubits-1. All tables must share dt and length.
struct ChainConfig {
    int n_qubits = 1;
    std::vector<double> delta;
    std::vector<KernelTable> kernels;
};

// Two readings of the master-equation memory column: the spin-diagonal
// per-channel convolution (default), and the 2x2 sojourn/blip-coupled form
// conjugated into the same 4-vector coordinates for comparison.
enum class Assembly { spin_diagonal, sojourn_blip_2x2 };

// Memory matrix M(tau) = -(i/4) g diag(-K^K, K^R + K^A, -i(K^A - K^R), K^K)
// per channel, local part from unitary_generator.
VolterraSystem assemble_single_qubit(const PhysicalParams& p, const KernelTable& k,
                                     Assembly assembly = Assembly::spin_diagonal);

// Site-resolved system over all pairs (i,j): dim = 4 L^2. The memory term
// couples block (i,j) to (k,j) through the separation-|i-k| kernel with the
// single-qubit channel structure; the local part applies each row site's
// splitting.
VolterraSystem assemble_chain(const PhysicalParams& p, const ChainConfig& c);

// Fixed-step scheme: trapezoidal memory quadrature (endpoint weights 1/2)
// combined with a Heun predictor-corrector; global order 2. Requires
// m_kernel length >= n_steps + 1. Throws NonFiniteError when any state
// component leaves the overflow guard 1e12 (reduce dt).
Trajectory evolve(const VolterraSystem& sys, const Eigen::VectorXcd& x0, int n_steps);

// Richardson self-convergence estimate: runs make_system at dt, dt/2 and
// dt/4 over [0, t_end] and returns log2 of the ratio of successive
// max-norm trajectory differences on the common grid; ~2 for this scheme.
double convergence_order(const std::function<VolterraSystem(double)>& make_system,
                         const Eigen::VectorXcd& x0, double dt, double t_end);

}  // namespace qdeco
