#include "qdeco/volterra.hpp"

#include <cmath>

#include "qdeco/observables.hpp"

namespace qdeco {

namespace {

constexpr double kOverflowGuard = 1e12;

// Channel column of the memory matrix for a kernel sample:
// (-K^K, K^R + K^A, -i(K^A - K^R), K^K) scaled by -(i/4) g.
Eigen::Vector4cd channel_diagonal(double g, cplx kr, cplx ka, cplx kk) {
    const cplx pref = cplx(0.0, -0.25) * g;
    Eigen::Vector4cd d;
    d(0) = pref * (-kk);
    d(1) = pref * (kr + ka);
    d(2) = pref * (cplx(0.0, -1.0) * (ka - kr));
    d(3) = pref * kk;
    return d;
}

}  // namespace

void VolterraSystem::validate() const {
    if (dim < 1) throw DimensionMismatchError("volterra: dim must be >= 1");
    if (!(dt > 0.0)) throw ConfigError("volterra: dt must be > 0");
    if (a_local.rows() != dim || a_local.cols() != dim)
        throw DimensionMismatchError("volterra: a_local shape mismatch");
    if (m_kernel.empty()) throw DimensionMismatchError("volterra: empty memory kernel");
    if (!a_local.allFinite()) throw NonFiniteError("volterra: a_local has non-finite entries");
    for (const auto& m : m_kernel) {
        if (m.rows() != dim || m.cols() != dim)
            throw DimensionMismatchError("volterra: kernel matrix shape mismatch");
        if (!m.allFinite()) throw NonFiniteError("volterra: kernel has non-finite entries");
    }
}

VolterraSystem assemble_single_qubit(const PhysicalParams& p, const KernelTable& k,
                                     Assembly assembly) {
    p.validate();
    VolterraSystem sys;
    sys.dim = 4;
    sys.dt = k.dt;
    sys.a_local = unitary_generator(p);
    sys.m_kernel.reserve(k.size());

    if (assembly == Assembly::spin_diagonal) {
        for (std::size_t n = 0; n < k.size(); ++n) {
            Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
            m.diagonal() = channel_diagonal(p.g, k.k_r[n], k.k_a[n], k.k_k[n]);
            sys.m_kernel.push_back(m);
        }
        return sys;
    }

    // sojourn/blip-coupled 2x2 reading, written in the basis
    // (p_up, p_dn, c_up, c_dn) and conjugated to (s_tr, s_pm, s_mp, s_z).
    Eigen::Matrix4cd basis;  // s = basis * b
    basis << 1, 1, 0, 0,  //
        0, 0, 1, 0,       //
        0, 0, 0, 1,       //
        1, -1, 0, 0;
    const Eigen::Matrix4cd basis_inv = basis.inverse();
    const cplx pref = cplx(0.0, -0.25) * p.g;
    for (std::size_t n = 0; n < k.size(); ++n) {
        Eigen::Matrix4cd mb = Eigen::Matrix4cd::Zero();
        mb(0, 2) = 2.0 * k.k_r[n];
        mb(1, 3) = 2.0 * k.k_r[n];
        mb(2, 0) = 2.0 * k.k_a[n];
        mb(3, 1) = 2.0 * k.k_a[n];
        mb(2, 2) = -2.0 * k.k_k[n];
        mb(3, 3) = -2.0 * k.k_k[n];
        sys.m_kernel.push_back(basis * (pref * mb) * basis_inv);
    }
    return sys;
}

VolterraSystem assemble_chain(const PhysicalParams& p, const ChainConfig& c) {
    p.validate();
    const int nq = c.n_qubits;
    if (nq < 1) throw ConfigError("chain: n_qubits must be >= 1");
    if (static_cast<int>(c.kernels.size()) != nq)
        throw DimensionMismatchError("chain: need one kernel table per separation 0 .. L-1");
    if (static_cast<int>(c.delta.size()) != nq)
        throw DimensionMismatchError("chain: need one splitting per site");
    const double dt = c.kernels.front().dt;
    const std::size_t len = c.kernels.front().size();
    for (const auto& k : c.kernels) {
        if (k.dt != dt || k.size() != len)
            throw DimensionMismatchError("chain: kernel tables disagree on dt or length");
    }

    VolterraSystem sys;
    sys.dim = 4 * static_cast<Eigen::Index>(nq) * nq;
    sys.dt = dt;
    sys.a_local = Eigen::MatrixXcd::Zero(sys.dim, sys.dim);
    for (int i = 0; i < nq; ++i) {
        const Eigen::Matrix4cd gen = unitary_generator(PhysicalParams{p.g, c.delta[i]});
        for (int j = 0; j < nq; ++j) {
            const Eigen::Index off = 4 * (static_cast<Eigen::Index>(i) * nq + j);
            sys.a_local.block<4, 4>(off, off) = gen;
        }
    }

    sys.m_kernel.reserve(len);
    for (std::size_t n = 0; n < len; ++n) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(sys.dim, sys.dim);
        for (int i = 0; i < nq; ++i) {
            for (int k = 0; k < nq; ++k) {
                const auto& table = c.kernels[static_cast<std::size_t>(std::abs(i - k))];
                const Eigen::Vector4cd diag =
                    channel_diagonal(p.g, table.k_r[n], table.k_a[n], table.k_k[n]);
                for (int j = 0; j < nq; ++j) {
                    const Eigen::Index row = 4 * (static_cast<Eigen::Index>(i) * nq + j);
                    const Eigen::Index col = 4 * (static_cast<Eigen::Index>(k) * nq + j);
                    m.block<4, 4>(row, col).diagonal() += diag;
                }
            }
        }
        sys.m_kernel.push_back(std::move(m));
    }
    return sys;
}

namespace {

void check_state(const Eigen::VectorXcd& x) {
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kOverflowGuard)
        throw NonFiniteError("evolve: state exceeded overflow guard 1e12; reduce dt");
}

}  // namespace

Trajectory evolve(const VolterraSystem& sys, const Eigen::VectorXcd& x0, int n_steps) {
    sys.validate();
    if (x0.size() != sys.dim) throw DimensionMismatchError("evolve: x0 size != system dim");
    if (n_steps < 1) throw ConfigError("evolve: n_steps must be >= 1");
    if (sys.m_kernel.size() < static_cast<std::size_t>(n_steps) + 1)
        throw DimensionMismatchError("evolve: kernel table shorter than requested horizon");
    check_state(x0);

    const double dt = sys.dt;
    const Eigen::Index dim = sys.dim;

    // Single-qubit assemblies produce strictly diagonal kernels; packing
    // their diagonals lets the O(n^2) history sweeps run elementwise.
    bool diagonal = true;
    for (const auto& m : sys.m_kernel) {
        if (!m.isDiagonal(0.0)) {
            diagonal = false;
            break;
        }
    }
    Eigen::MatrixXcd diag_cols;
    if (diagonal) {
        diag_cols.resize(dim, static_cast<Eigen::Index>(n_steps) + 1);
        for (int n = 0; n <= n_steps; ++n) diag_cols.col(n) = sys.m_kernel[static_cast<std::size_t>(n)].diagonal();
    }

    std::vector<Eigen::VectorXcd> xs;
    xs.reserve(static_cast<std::size_t>(n_steps) + 1);
    xs.push_back(x0);

    Eigen::VectorXcd acc(dim), integ_n(dim), integ_star(dim), f_n(dim), x_star(dim), f_star(dim);

    auto add_kernel_term = [&](Eigen::VectorXcd& out, int kernel_idx, const Eigen::VectorXcd& x,
                               double w) {
        if (diagonal)
            out.noalias() += w * diag_cols.col(kernel_idx).cwiseProduct(x);
        else
            out.noalias() += w * (sys.m_kernel[static_cast<std::size_t>(kernel_idx)] * x);
    };

    // Trapezoidal memory sum dt * sum''_{m=0..top} M[top-m] x_m, with the
    // last history point optionally replaced by a predictor value.
    auto memory_integral = [&](Eigen::VectorXcd& out, int top, const Eigen::VectorXcd* last) {
        out.setZero();
        if (top == 0) return;
        add_kernel_term(out, top, xs[0], 0.5);
        for (int m = 1; m < top; ++m) add_kernel_term(out, top - m, xs[static_cast<std::size_t>(m)], 1.0);
        add_kernel_term(out, 0, last ? *last : xs[static_cast<std::size_t>(top)], 0.5);
        out *= dt;
    };

    for (int n = 0; n < n_steps; ++n) {
        const auto& x_n = xs.back();
        memory_integral(integ_n, n, nullptr);
        f_n.noalias() = sys.a_local * x_n;
        f_n += integ_n;

        x_star = x_n + dt * f_n;
        memory_integral(integ_star, n + 1, &x_star);
        f_star.noalias() = sys.a_local * x_star;
        f_star += integ_star;

        Eigen::VectorXcd x_next = x_n + (0.5 * dt) * (f_n + f_star);
        check_state(x_next);
        xs.push_back(std::move(x_next));
    }

    Trajectory traj;
    traj.dt = dt;
    traj.times.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) traj.times[i] = static_cast<double>(i) * dt;
    traj.states = std::move(xs);
    if (dim >= 4) {
        traj.observables.reserve(traj.states.size());
        for (std::size_t i = 0; i < traj.states.size(); ++i)
            traj.observables.push_back(make_observables(traj.block(i)));
    }
    return traj;
}

double convergence_order(const std::function<VolterraSystem(double)>& make_system,
                         const Eigen::VectorXcd& x0, double dt, double t_end) {
    if (!(dt > 0.0) || !(t_end > dt)) throw ConfigError("convergence_order: need t_end > dt > 0");
    const int n1 = static_cast<int>(std::lround(t_end / dt));

    const Trajectory t1 = evolve(make_system(dt), x0, n1);
    const Trajectory t2 = evolve(make_system(dt / 2.0), x0, 2 * n1);
    const Trajectory t4 = evolve(make_system(dt / 4.0), x0, 4 * n1);

    auto max_diff = [](const Trajectory& coarse, const Trajectory& fine, int stride) {
        double dev = 0.0;
        for (std::size_t i = 0; i < coarse.states.size(); ++i) {
            const double d =
                (coarse.states[i] - fine.states[i * static_cast<std::size_t>(stride)])
                    .cwiseAbs()
                    .maxCoeff();
            dev = std::max(dev, d);
        }
        return dev;
    };

    const double e1 = max_diff(t1, t2, 2);
    const double e2 = max_diff(t2, t4, 2);
    if (e1 <= 0.0 || e2 <= 0.0) throw SimError("convergence_order: degenerate error estimate");
    return std::log2(e1 / e2);
}

}  // namespace qdeco
