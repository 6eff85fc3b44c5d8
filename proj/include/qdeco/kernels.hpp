#pragma once

#include "qdeco/types.hpp"

namespace qdeco {

enum class Statistics { fermion, boson };

// Random-telegraph-noise bath: amplitude j_c, correlation time tau0.
struct RtnParams {
    double j_c = 0.0;
    double tau0 = 1.0;

    void validate() const;
};

// Free 1D tight-binding bath sampled at n_sites momenta, dispersion
// w(k) = -2 cos k (hopping = 1). delta_b splits the two bands of the
// multi-band variant; site_separation d = i - j selects the real-space
// kernel element (0 for on-site).
struct BandParams {
    Statistics statistics = Statistics::fermion;
    int n_sites = 2;
    double mu = 0.0;
    double temperature = 0.0;
    double delta_b = 0.0;
    int n_bands = 1;
    int n_spins = 1;
    int site_separation = 0;

    void validate() const;
};

// Uniformly sampled retarded/advanced/Keldysh kernels as functions of the
// time difference t - t1 >= 0. The advanced kernel has support only at the
// endpoint t1 = t, so k_a[n] = 0 for n >= 1 and k_a[0] carries the value
// picked up by the quadrature endpoint weight.
struct KernelTable {
    double dt = 0.0;
    std::vector<cplx> k_r;
    std::vector<cplx> k_a;
    std::vector<cplx> k_k;

    std::size_t size() const { return k_k.size(); }
};

// Occupation 1/(e^{(omega-mu)/T} +- 1); + fermions, - bosons. At T = 0 the
// fermion value is the step-function limit with the symmetric convention
// n = 1/2 at omega = mu. Throws BosePoleError for bosons with omega <= mu.
double occupation(double omega, const BandParams& p);

// K^K(tau) = i * j_c * e^{-tau/tau0}; the classical noise carries no
// response function, so K^R = K^A = 0.
KernelTable rtn_kernel(const RtnParams& p, double dt, int n_steps);

// Discrete inverse transform over n_sites momenta:
//   K^R(tau) = -i/N sum_j e^{i k_j d} e^{-i(w(k_j)-mu) tau}
//   K^K(tau) = -i/N sum_j (1 -+ 2 n_kj) e^{i k_j d} e^{-i(w(k_j)-mu) tau}
// (- fermions, + bosons), K^A as the endpoint sample described above.
KernelTable band_kernel(const BandParams& p, double dt, int n_steps);

// Elementwise sum over n_spins spin copies and n_bands band copies, band 1
// with dispersion w(k) - delta_b and band 2 with w(k) + delta_b; occupation
// evaluated at each band's shifted energy. n_bands = 1 applies no shift.
KernelTable multiband_kernel(const BandParams& p, double dt, int n_steps);

}  // namespace qdeco
