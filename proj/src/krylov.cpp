#include "bhecho/krylov.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <limits>

namespace bhecho {

namespace {

cplx cdot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double cnorm(const std::vector<cplx>& a) {
    double acc = 0.0;
    for (const auto& x : a) acc += std::norm(x);
    return std::sqrt(acc);
}

// y = exp(-i T dt) * (scale * e1) for the real symmetric tridiagonal T
Eigen::VectorXcd expm_tridiag_e1(const std::vector<double>& alpha,
                                 const std::vector<double>& beta, double dt, double scale) {
    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd ad = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd bd = m > 1 ? Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1).eval()
                               : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(ad, bd, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd& lam = solver.eigenvalues();
    const Eigen::MatrixXd& Q = solver.eigenvectors();
    Eigen::VectorXcd phases(m);
    for (int i = 0; i < m; ++i) phases(i) = std::exp(cplx(0.0, -lam(i) * dt)) * (scale * Q(0, i));
    return Q * phases;
}

}  // namespace

EvolveStats evolve_inplace(const CsrMatrix& H, std::vector<cplx>& psi, double t,
                           const EvolveOptions& opt) {
    EvolveStats stats;
    if (psi.size() != H.rows) throw ConfigError("evolve: state dimension mismatch");
    if (t < 0.0) throw ConfigError("evolve: negative time");
    const double norm0 = cnorm(psi);
    if (t == 0.0 || norm0 == 0.0) return stats;

    const double breakdown_tol = 1e-14 * std::max(1.0, H.gershgorin_bound());

    double remaining = t;
    while (remaining > 0.0) {
        if (++stats.substeps > opt.max_substeps)
            throw ConvergenceError("evolve: substep limit exceeded");

        const double norm_in = cnorm(psi);
        std::vector<std::vector<cplx>> V;
        V.reserve(static_cast<std::size_t>(opt.max_krylov));
        V.push_back(psi);
        for (auto& x : V[0]) x /= norm_in;

        std::vector<double> alpha, beta;
        std::vector<cplx> w(psi.size());
        double beta_next = 0.0;
        bool invariant = false;

        for (int j = 0; j < opt.max_krylov; ++j) {
            H.apply(V.back().data(), w.data());
            ++stats.matvecs;
            const double a = cdot(V.back(), w).real();
            alpha.push_back(a);
            for (std::size_t i = 0; i < w.size(); ++i) {
                w[i] -= a * V.back()[i];
                if (j > 0) w[i] -= beta.back() * V[V.size() - 2][i];
            }
            // one full reorthogonalization pass keeps the basis clean over
            // the short recurrences used here
            for (const auto& vk : V) {
                const cplx c = cdot(vk, w);
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * vk[i];
            }
            beta_next = cnorm(w);
            if (beta_next <= breakdown_tol) {
                invariant = true;
                break;
            }
            if (j + 1 < opt.max_krylov) {
                beta.push_back(beta_next);
                V.push_back(w);
                for (auto& x : V.back()) x /= beta_next;
            }
        }

        // pick the largest substep meeting the per-unit-time error budget;
        // the a-posteriori estimate cannot read below the roundoff of the
        // subspace solve (~ beta * eps * norm), so the budget is floored
        // there — the true local error at that point is far smaller still
        double dt = remaining;
        Eigen::VectorXcd y;
        const double noise_floor =
            beta_next * 8.0 * std::numeric_limits<double>::epsilon() * norm_in;
        for (int halvings = 0;; ++halvings) {
            y = expm_tridiag_e1(alpha, beta, dt, norm_in);
            const double err =
                invariant ? 0.0 : beta_next * std::abs(y(static_cast<Eigen::Index>(alpha.size()) - 1));
            const double budget = std::max(opt.tol * dt * norm_in, noise_floor);
            if (err <= budget || invariant) {
                stats.error_estimate += err;
                break;
            }
            if (halvings >= 60) {
                char msg[160];
                std::snprintf(msg, sizeof msg,
                              "evolve: Krylov step did not converge (err %.3e, budget %.3e, "
                              "dt %.3e, m %zu, beta %.3e)",
                              err, budget, dt, alpha.size(), beta_next);
                throw ConvergenceError(msg);
            }
            dt *= 0.5;
        }

        for (std::size_t i = 0; i < psi.size(); ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < alpha.size(); ++j)
                acc += y(static_cast<Eigen::Index>(j)) * V[j][i];
            psi[i] = acc;
        }
        remaining -= dt;
    }

    stats.norm_drift = std::abs(cnorm(psi) - norm0) / norm0;
    if (stats.norm_drift > opt.norm_drift_tol)
        throw ConvergenceError("evolve: unitarity drift " + std::to_string(stats.norm_drift) +
                               " exceeds the monitor threshold");
    return stats;
}

std::vector<cplx> evolve(const CsrMatrix& H, const std::vector<cplx>& psi, double t,
                         const EvolveOptions& opt) {
    auto out = psi;
    evolve_inplace(H, out, t, opt);
    return out;
}

}  // namespace bhecho
