#include "bhecho/doublon_holon.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "bhecho/kernels.hpp"

namespace bhecho {

namespace {

void check_gate(double U, double J, int nbar) {
    const double bound = 4.0 * (nbar + 1);
    if (J > 0.0 && U / J < bound)
        throw GuardError("doublon-holon model invalid: requires U/J >= 4(nbar+1) = " +
                         std::to_string(bound));
    if (J == 0.0 && U <= 0.0)
        throw GuardError("doublon-holon model invalid: U must be positive");
}

}  // namespace

// One momentum sector of the truncated-basis quadratic Hamiltonian.
//
// In the three-state local basis the lattice operators reduce to
// a_j ~ sqrt(nbar) h_j^dag + sqrt(nbar+1) d_j with hard-core d/h treated
// as mutually anticommuting fermions. The hopping then yields
//   doublon band    -2 J (nbar+1) cos k  on top of the cost U nbar,
//   holon band      -2 J nbar cos k      on top of -U (nbar-1),
//   pair creation   -2 J sqrt(nbar(nbar+1)) sin k  (antisymmetrized; the
//   symmetric combination is killed by the fermionic exchange sign).
// The sector {vac, d_k h_-k} block is diagonalized numerically and the
// quasiparticle energies are measured from the dressed vacuum.
DHSector dh_sector(double U, double J, int nbar, double k) {
    const double c = std::cos(k), s = std::sin(k);
    const double eps_d = U * nbar - 2.0 * J * (nbar + 1) * c;
    const double eps_h = -U * (nbar - 1) - 2.0 * J * nbar * c;
    const double lambda = -2.0 * J * std::sqrt(double(nbar) * (nbar + 1)) * s;

    Eigen::Matrix2d block;
    block << 0.0, lambda, lambda, eps_d + eps_h;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(block);
    const double e_vac = solver.eigenvalues()(0);
    Eigen::Vector2d v = solver.eigenvectors().col(0);
    if (v(0) < 0.0) v = -v;  // dressed vacuum = cos(theta/2)|vac> - sin(theta/2)|pair>

    DHSector out;
    out.omega_d = eps_d - e_vac;
    out.omega_h = eps_h - e_vac;
    // Rotation angle of the vacuum dressing, in (-pi/2, pi/2) with
    // theta -> 0 in the atomic limit. Only differences theta_k - theta_q
    // are observable.
    out.theta = 2.0 * std::atan2(-v(1), v(0));
    return out;
}

DHModel dh_model(const ModelParams& p, int k_count) {
    p.validate();
    check_gate(p.U, p.J, p.nbar);
    if (k_count == kThermodynamic) return dh_model_thermodynamic(p);

    if (k_count < 2) throw ConfigError("dh_model: need at least two momentum nodes");
    DHModel m;
    m.U = p.U;
    m.J = p.J;
    m.nbar = p.nbar;
    m.thermodynamic = false;
    m.k_count = k_count;
    const int n = k_count;
    const int m_lo = n % 2 == 0 ? -n / 2 + 1 : -(n - 1) / 2;
    const int m_hi = n % 2 == 0 ? n / 2 : (n - 1) / 2;
    for (int j = m_lo; j <= m_hi; ++j) {
        const double k = 2.0 * std::numbers::pi * j / n;
        const auto sec = dh_sector(p.U, p.J, p.nbar, k);
        m.k.push_back(k);
        m.theta.push_back(sec.theta);
        m.omega_d.push_back(sec.omega_d);
        m.omega_h.push_back(sec.omega_h);
    }
    return m;
}

DHModel dh_model_thermodynamic(const ModelParams& p, int k_count) {
    p.validate();
    check_gate(p.U, p.J, p.nbar);
    if (k_count < 2) throw ConfigError("dh_model: need at least two quadrature nodes");
    DHModel m;
    m.U = p.U;
    m.J = p.J;
    m.nbar = p.nbar;
    m.thermodynamic = true;
    m.k_count = k_count;
    for (int j = 0; j < k_count; ++j) {
        // midpoint nodes over (-pi, pi]; the integrand is smooth and
        // periodic, so the rule converges spectrally
        const double k = -std::numbers::pi + (j + 0.5) * 2.0 * std::numbers::pi / k_count;
        const auto sec = dh_sector(p.U, p.J, p.nbar, k);
        m.k.push_back(k);
        m.theta.push_back(sec.theta);
        m.omega_d.push_back(sec.omega_d);
        m.omega_h.push_back(sec.omega_h);
    }
    return m;
}

PairModes pair_modes(const DHModel& m) {
    const std::size_t n = m.size();
    PairModes pm;
    pm.c1.resize(n * n);
    pm.c2.resize(n * n);
    pm.w.resize(n * n);
    const double inv_n2 = 1.0 / (double(n) * double(n));
    std::size_t idx = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b, ++idx) {
            const double s = std::sin(0.5 * (m.theta[a] - m.theta[b]));
            const double amp = s * s * inv_n2;
            const double w = m.omega_d[a] + m.omega_h[b];
            pm.w[idx] = w;
            pm.c1[idx] = amp / w;
            pm.c2[idx] = amp / (w * w);
        }
    return pm;
}

double gamma_m(const PairModes& pm, double Ue, double t) {
    const auto sums = kernels::mode_sums(pm.c1.data(), pm.c2.data(), pm.w.data(), pm.w.size(), t);
    return Ue * Ue * sums.rate;
}

double gamma_m_integral(const PairModes& pm, double Ue, double t) {
    const auto sums = kernels::mode_sums(pm.c1.data(), pm.c2.data(), pm.w.data(), pm.w.size(), t);
    return -Ue * Ue * sums.decay;
}

double gamma_m(const DHModel& m, double Ue, double t) {
    return gamma_m(pair_modes(m), Ue, t);
}

double gamma_m_integral(const DHModel& m, double Ue, double t) {
    return gamma_m_integral(pair_modes(m), Ue, t);
}

double first_revival_time(const DHModel& m) {
    const auto sec = dh_sector(m.U, m.J, m.nbar, 0.5 * std::numbers::pi);
    return 2.0 * std::numbers::pi / (sec.omega_d + sec.omega_h);
}

DephasingTrace mott_trace(const DHModel& model, double Ue, const TimeGrid& grid) {
    const PairModes pm = pair_modes(model);
    const double ue2 = Ue * Ue;

    DephasingTrace tr;
    tr.grid = grid;
    tr.tag = Provenance::mott_analytic;
    const std::size_t M = grid.samples();
    tr.gamma.resize(M);
    tr.Gamma.resize(M);
    tr.sqrtL.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        const auto sums =
            kernels::mode_sums(pm.c1.data(), pm.c2.data(), pm.w.data(), pm.w.size(), grid.time(i));
        tr.gamma[i] = ue2 * sums.rate;
        tr.Gamma[i] = -ue2 * sums.decay;
        tr.sqrtL[i] = std::exp(tr.Gamma[i]);
    }
    tr.gamma[0] = 0.0;
    tr.Gamma[0] = 0.0;
    tr.sqrtL[0] = 1.0;
    return tr;
}

DephasingTrace mott_trace(const ModelParams& p, const TimeGrid& grid, int k_count) {
    const DHModel model = k_count == kThermodynamic ? dh_model_thermodynamic(p)
                                                    : dh_model(p, k_count);
    return mott_trace(model, p.Ue, grid);
}

}  // namespace bhecho
