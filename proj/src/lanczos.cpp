#include "bhecho/lanczos.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace bhecho {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void scale(std::vector<double>& a, double s) {
    for (auto& x : a) x *= s;
}

std::vector<double> random_unit_vector(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    scale(v, 1.0 / norm(v));
    return v;
}

GroundStateResult dense_ground_state(const CsrMatrix& H, double norm_est) {
    const auto n = static_cast<Eigen::Index>(H.rows);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < H.rows; ++r)
        for (std::int64_t k = H.rowptr[r]; k < H.rowptr[r + 1]; ++k)
            dense(static_cast<Eigen::Index>(r), H.col[static_cast<std::size_t>(k)]) =
                H.val[static_cast<std::size_t>(k)];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed");

    GroundStateResult res;
    res.energy = solver.eigenvalues()(0);
    res.gap = n > 1 ? solver.eigenvalues()(1) - solver.eigenvalues()(0) : std::numeric_limits<double>::infinity();
    res.norm_estimate = norm_est;
    res.state.assign(H.rows, 0.0);
    Eigen::Map<Eigen::VectorXd>(res.state.data(), n) = solver.eigenvectors().col(0);
    std::vector<double> hx(H.rows);
    H.apply_real(res.state.data(), hx.data());
    double r2 = 0.0;
    for (std::size_t i = 0; i < H.rows; ++i) {
        const double d = hx[i] - res.energy * res.state[i];
        r2 += d * d;
    }
    res.residual = std::sqrt(r2);
    return res;
}

}  // namespace

double spectral_norm_estimate(const CsrMatrix& H, int iterations, unsigned seed) {
    if (H.rows == 0) return 0.0;
    auto v = random_unit_vector(H.rows, seed);
    std::vector<double> w(H.rows);
    double est = 0.0;
    for (int it = 0; it < iterations; ++it) {
        H.apply_real(v.data(), w.data());
        est = norm(w);
        if (est == 0.0) return 0.0;  // zero matrix
        for (std::size_t i = 0; i < H.rows; ++i) v[i] = w[i] / est;
    }
    return est;
}

GroundStateResult ground_state(const CsrMatrix& H, const GroundStateOptions& opt) {
    if (H.rows == 0) throw ConfigError("ground_state: empty matrix");
    const double norm_est = std::max(spectral_norm_estimate(H), 1e-300);

    if (H.rows <= opt.dense_threshold) {
        auto res = dense_ground_state(H, norm_est);
        if (H.rows > 1 && res.gap < opt.degeneracy_tol * norm_est)
            throw GuardError("ground state is (near-)degenerate: gap " + std::to_string(res.gap));
        return res;
    }

    const std::size_t n = H.rows;
    const int m_max = std::min<std::size_t>(opt.max_subspace, n);

    auto v0 = random_unit_vector(n, opt.seed);
    GroundStateResult res;
    res.norm_estimate = norm_est;

    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        std::vector<std::vector<double>> V;
        V.reserve(static_cast<std::size_t>(m_max));
        V.push_back(v0);
        std::vector<double> alpha, beta;  // tridiagonal entries
        std::vector<double> w(n);

        Eigen::VectorXd ritz;
        double theta0 = 0.0, theta1 = 0.0, ritz_residual = norm_est;

        for (int j = 0; j < m_max; ++j) {
            H.apply_real(V.back().data(), w.data());
            const double a = dot(V.back(), w);
            alpha.push_back(a);
            for (std::size_t i = 0; i < n; ++i)
                w[i] -= a * V.back()[i] + (j > 0 ? beta.back() * V[V.size() - 2][i] : 0.0);
            // full reorthogonalization, two classical Gram-Schmidt passes
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& vk : V) {
                    const double c = dot(vk, w);
                    for (std::size_t i = 0; i < n; ++i) w[i] -= c * vk[i];
                }
            const double b = norm(w);

            // Ritz values of the current tridiagonal block
            const int m = static_cast<int>(alpha.size());
            Eigen::VectorXd ad = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
            Eigen::VectorXd bd(m > 1 ? m - 1 : 1);
            for (int i = 0; i + 1 < m; ++i) bd(i) = beta[static_cast<std::size_t>(i)];
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolve;
            tsolve.computeFromTridiagonal(ad, m > 1 ? bd.head(m - 1).eval() : Eigen::VectorXd(),
                                          Eigen::ComputeEigenvectors);
            theta0 = tsolve.eigenvalues()(0);
            theta1 = m > 1 ? tsolve.eigenvalues()(1) : theta0;
            ritz = tsolve.eigenvectors().col(0);
            ritz_residual = b * std::abs(ritz(m - 1));

            if (b <= 1e-14 * norm_est) break;  // invariant subspace
            if (ritz_residual <= 0.1 * opt.residual_tol * norm_est) break;
            if (j + 1 < m_max) {
                beta.push_back(b);
                V.push_back(w);
                scale(V.back(), 1.0 / b);
            }
        }

        // assemble the Ritz vector
        std::vector<double> x(n, 0.0);
        for (std::size_t j = 0; j < alpha.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) x[i] += ritz(static_cast<Eigen::Index>(j)) * V[j][i];
        scale(x, 1.0 / norm(x));

        H.apply_real(x.data(), w.data());
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = w[i] - theta0 * x[i];
            r2 += d * d;
        }
        const double resid = std::sqrt(r2);
        res.iterations += static_cast<int>(alpha.size());

        if (resid <= opt.residual_tol * norm_est) {
            res.energy = theta0;
            res.state = std::move(x);
            res.residual = resid;
            res.gap = theta1 - theta0;
            if (res.gap < opt.degeneracy_tol * norm_est)
                throw GuardError("ground state is (near-)degenerate: Ritz gap " +
                                 std::to_string(res.gap));
            return res;
        }
        v0 = std::move(x);  // restart from the best Ritz vector
        res.residual = resid;
    }

    throw ConvergenceError("Lanczos ground state did not converge: residual " +
                           std::to_string(res.residual) + " after " +
                           std::to_string(res.iterations) + " iterations (target " +
                           std::to_string(opt.residual_tol * norm_est) + ")");
}

}  // namespace bhecho
