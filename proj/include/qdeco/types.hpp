#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdeco {

using cplx = std::complex<double>;

// Error taxonomy: every throwing path in the library uses one of these.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonFiniteError : SimError {
    using SimError::SimError;
};
struct BosePoleError : SimError {
    using SimError::SimError;
};
struct DimensionMismatchError : SimError {
    using SimError::SimError;
};
struct GridMismatchError : SimError {
    using SimError::SimError;
};
struct ConfigError : SimError {
    using SimError::SimError;
};

// Units: hbar = 1 and the bath hopping t = 1. g is the squared transverse
// coupling (gamma_N * hbar * A_perp)^2, delta the qubit level splitting.
struct PhysicalParams {
    double g = 0.0;
    double delta = 0.0;

    void validate() const;
};

// Density-matrix coordinates of the spin-diagonal master equation:
// s_tr multiplies |u><u| + |d><d| (trace channel), s_pm |u><d|,
// s_mp |d><u|, s_z |u><u| - |d><d| (population difference).
struct SojournBlipState {
    cplx s_tr{0.0};
    cplx s_pm{0.0};
    cplx s_mp{0.0};
    cplx s_z{0.0};

    Eigen::Vector4cd to_vector() const;
    static SojournBlipState from_vector(const Eigen::Ref<const Eigen::Vector4cd>& v);
};

// Reconstructed 2x2 matrix. Hermiticity and unit trace hold only at t = 0
// for physical initial data; the dynamics conserves neither.
using QubitMatrix = Eigen::Matrix2cd;

struct Observables {
    cplx trace{0.0};
    double p_up = 0.0;
    double p_dn = 0.0;
    double abs_pm = 0.0;
    double abs_mp = 0.0;
    double entropy = 0.0;      // clamped + renormalized spectrum
    double entropy_raw = 0.0;  // clamped spectrum only (diagnostic)
};

// Uniform-grid time series of full system states. Observables are derived
// from the leading 4-component block (the whole state for a single qubit,
// the (0,0) site pair for a chain); empty when dim < 4.
struct Trajectory {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    std::vector<Observables> observables;

    SojournBlipState block(std::size_t step, std::size_t block_index = 0) const;
};

}  // namespace qdeco
