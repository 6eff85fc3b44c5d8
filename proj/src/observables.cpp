#include "qdeco/observables.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qdeco {

void PhysicalParams::validate() const {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("physical.g must be finite and >= 0");
    if (!std::isfinite(delta)) throw ConfigError("physical.delta must be finite");
}

Eigen::Vector4cd SojournBlipState::to_vector() const {
    Eigen::Vector4cd v;
    v << s_tr, s_pm, s_mp, s_z;
    return v;
}

SojournBlipState SojournBlipState::from_vector(const Eigen::Ref<const Eigen::Vector4cd>& v) {
    return SojournBlipState{v(0), v(1), v(2), v(3)};
}

SojournBlipState Trajectory::block(std::size_t step, std::size_t block_index) const {
    const auto& x = states.at(step);
    const Eigen::Index off = static_cast<Eigen::Index>(4 * block_index);
    if (off + 4 > x.size()) throw DimensionMismatchError("block index out of range");
    return SojournBlipState{x(off), x(off + 1), x(off + 2), x(off + 3)};
}

QubitMatrix reconstruct(const SojournBlipState& s) {
    QubitMatrix m;
    m(0, 0) = 0.5 * (s.s_tr + s.s_z);
    m(1, 1) = 0.5 * (s.s_tr - s.s_z);
    m(0, 1) = s.s_pm;
    m(1, 0) = s.s_mp;
    return m;
}

SojournBlipState decompose(const QubitMatrix& m) {
    SojournBlipState s;
    s.s_tr = m(0, 0) + m(1, 1);
    s.s_z = m(0, 0) - m(1, 1);
    s.s_pm = m(0, 1);
    s.s_mp = m(1, 0);
    return s;
}

namespace {

Eigen::Vector2d hermitian_spectrum(const QubitMatrix& m) {
    if (!m.allFinite()) throw NonFiniteError("entropy: matrix has non-finite entries");
    const QubitMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<QubitMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace

double entropy(const QubitMatrix& m, double eps) {
    if (!(eps > 0.0)) throw ConfigError("entropy: eps must be > 0");
    const Eigen::Vector2d lam = hermitian_spectrum(m);
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
        if (lam(i) <= 0.0) continue;
        s -= lam(i) * std::log(std::max(lam(i), eps));
    }
    return s;
}

double entropy_renormalized(const QubitMatrix& m, double eps) {
    if (!(eps > 0.0)) throw ConfigError("entropy: eps must be > 0");
    const Eigen::Vector2d lam = hermitian_spectrum(m);
    const double l0 = std::max(lam(0), eps);
    const double l1 = std::max(lam(1), eps);
    const double norm = l0 + l1;
    double s = 0.0;
    for (double p : {l0 / norm, l1 / norm}) s -= p * std::log(p);
    return s;
}

Eigen::Matrix4cd unitary_generator(const PhysicalParams& p) {
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    a(1, 1) = cplx(0.0, -p.delta);
    a(2, 2) = cplx(0.0, +p.delta);
    return a;
}

Observables make_observables(const SojournBlipState& s, double eps) {
    Observables o;
    o.trace = s.s_tr;
    const QubitMatrix rho = reconstruct(s);
    o.p_up = rho(0, 0).real();
    o.p_dn = rho(1, 1).real();
    o.abs_pm = std::abs(s.s_pm);
    o.abs_mp = std::abs(s.s_mp);
    o.entropy = entropy_renormalized(rho, eps);
    o.entropy_raw = entropy(rho, eps);
    return o;
}

}  // namespace qdeco
