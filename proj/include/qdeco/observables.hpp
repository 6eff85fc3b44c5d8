#pragma once

#include "qdeco/types.hpp"

namespace qdeco {

// Linear bijection between the 4-vector coordinates and the 2x2 matrix:
// rho00 = (s_tr + s_z)/2, rho11 = (s_tr - s_z)/2, rho01 = s_pm, rho10 = s_mp.
QubitMatrix reconstruct(const SojournBlipState& s);
SojournBlipState decompose(const QubitMatrix& m);

// Von Neumann entropy -sum_i lambda_i ln lambda_i over the eigenvalues of
// the Hermitian part (m + m^dag)/2. Eigenvalues are floored at eps before
// the log; negative eigenvalues contribute nothing. Throws NonFiniteError
// on non-finite entries.
double entropy(const QubitMatrix& m, double eps = 1e-12);

// Same spectrum, but clamped at eps and renormalized to sum 1 before the
// entropy formula. Keeps S within [0, ln 2] for the non-trace-preserving
// dynamics; this is the value reported in trajectories.
double entropy_renormalized(const QubitMatrix& m, double eps = 1e-12);

// Memoryless generator of the free qubit: rotates the coherences at the
// level splitting, s_pm' = -i*delta*s_pm, s_mp' = +i*delta*s_mp, and
// leaves the trace and population-difference channels untouched.
Eigen::Matrix4cd unitary_generator(const PhysicalParams& p);

Observables make_observables(const SojournBlipState& s, double eps = 1e-12);

}  // namespace qdeco
