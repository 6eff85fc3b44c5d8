#include "qdeco/kernels.hpp"

#include <cmath>

namespace qdeco {

void RtnParams::validate() const {
    if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw ConfigError("rtn.tau0 must be finite and > 0");
    if (!(j_c >= 0.0) || !std::isfinite(j_c)) throw ConfigError("rtn.j_c must be finite and >= 0");
}

void BandParams::validate() const {
    if (n_sites < 2) throw ConfigError("band.n_sites must be >= 2");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ConfigError("band.temperature must be finite and >= 0");
    if (!std::isfinite(mu)) throw ConfigError("band.mu must be finite");
    if (!std::isfinite(delta_b)) throw ConfigError("band.delta_b must be finite");
    if (n_bands != 1 && n_bands != 2) throw ConfigError("band.n_bands must be 1 or 2");
    if (n_spins != 1 && n_spins != 2) throw ConfigError("band.n_spins must be 1 or 2");
}

double occupation(double omega, const BandParams& p) {
    const double x = omega - p.mu;
    if (p.statistics == Statistics::fermion) {
        if (p.temperature == 0.0) {
            if (x < 0.0) return 1.0;
            if (x == 0.0) return 0.5;
            return 0.0;
        }
        return 1.0 / (std::exp(x / p.temperature) + 1.0);
    }
    // Bose function: a level at or below mu is unphysical.
    if (x <= 0.0) throw BosePoleError("occupation: boson level at omega <= mu");
    if (p.temperature == 0.0) return 0.0;
    return 1.0 / (std::exp(x / p.temperature) - 1.0);
}

KernelTable rtn_kernel(const RtnParams& p, double dt, int n_steps) {
    p.validate();
    if (!(dt > 0.0)) throw ConfigError("kernel: dt must be > 0");
    if (n_steps < 1) throw ConfigError("kernel: n_steps must be >= 1");
    KernelTable t;
    t.dt = dt;
    const std::size_t n = static_cast<std::size_t>(n_steps) + 1;
    t.k_r.assign(n, cplx(0.0, 0.0));
    t.k_a.assign(n, cplx(0.0, 0.0));
    t.k_k.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        t.k_k[i] = cplx(0.0, p.j_c * std::exp(-(static_cast<double>(i) * dt) / p.tau0));
    return t;
}

namespace {

// Single band with dispersion w(k) = -2 cos k + shift.
KernelTable band_kernel_shifted(const BandParams& p, double dt, int n_steps, double shift) {
    const int nk = p.n_sites;
    const double d = static_cast<double>(p.site_separation);
    const double stat_sign = (p.statistics == Statistics::fermion) ? -1.0 : +1.0;

    std::vector<double> freq(nk), weight(nk);
    std::vector<cplx> site_phase(nk);
    for (int j = 0; j < nk; ++j) {
        const double k = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(nk);
        const double eps = -2.0 * std::cos(k) + shift;
        freq[j] = eps - p.mu;
        weight[j] = 1.0 + 2.0 * stat_sign * occupation(eps, p);
        site_phase[j] = std::polar(1.0, k * d);
    }

    KernelTable t;
    t.dt = dt;
    const std::size_t n = static_cast<std::size_t>(n_steps) + 1;
    t.k_r.resize(n);
    t.k_k.resize(n);
    t.k_a.assign(n, cplx(0.0, 0.0));
    const double inv_n = 1.0 / static_cast<double>(nk);
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = static_cast<double>(i) * dt;
        cplx sum_r(0.0, 0.0), sum_k(0.0, 0.0);
        for (int j = 0; j < nk; ++j) {
            const cplx ph = site_phase[j] * std::polar(1.0, -freq[j] * tau);
            sum_r += ph;
            sum_k += weight[j] * ph;
        }
        t.k_r[i] = cplx(0.0, -1.0) * inv_n * sum_r;
        t.k_k[i] = cplx(0.0, -1.0) * inv_n * sum_k;
    }
    // Advanced endpoint: +i/N sum_j e^{i k_j d}.
    cplx sum_a(0.0, 0.0);
    for (int j = 0; j < nk; ++j) sum_a += site_phase[j];
    t.k_a[0] = cplx(0.0, +1.0) * inv_n * sum_a;
    return t;
}

void add_table(KernelTable& acc, const KernelTable& other) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc.k_r[i] += other.k_r[i];
        acc.k_a[i] += other.k_a[i];
        acc.k_k[i] += other.k_k[i];
    }
}

}  // namespace

KernelTable band_kernel(const BandParams& p, double dt, int n_steps) {
    p.validate();
    if (!(dt > 0.0)) throw ConfigError("kernel: dt must be > 0");
    if (n_steps < 1) throw ConfigError("kernel: n_steps must be >= 1");
    return band_kernel_shifted(p, dt, n_steps, 0.0);
}

KernelTable multiband_kernel(const BandParams& p, double dt, int n_steps) {
    p.validate();
    if (!(dt > 0.0)) throw ConfigError("kernel: dt must be > 0");
    if (n_steps < 1) throw ConfigError("kernel: n_steps must be >= 1");
    std::vector<double> shifts;
    if (p.n_bands == 1)
        shifts = {0.0};
    else
        shifts = {-p.delta_b, +p.delta_b};

    KernelTable acc;
    bool first = true;
    for (int spin = 0; spin < p.n_spins; ++spin) {
        for (double shift : shifts) {
            const KernelTable copy = band_kernel_shifted(p, dt, n_steps, shift);
            if (first) {
                acc = copy;
                first = false;
            } else {
                add_table(acc, copy);
            }
        }
    }
    return acc;
}

}  // namespace qdeco
