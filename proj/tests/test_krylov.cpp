#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "bhecho/hamiltonian.hpp"
#include "bhecho/krylov.hpp"

using namespace bhecho;

namespace {

ModelParams params(int Ns, double J, double U, double Ue, int nmax) {
    ModelParams p;
    p.Ns = Ns;
    p.J = J;
    p.U = U;
    p.Ue = Ue;
    p.nbar = 1;
    p.nmax = nmax;
    return p;
}

std::vector<cplx> random_state(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<cplx> v(n);
    double norm2 = 0.0;
    for (auto& x : v) {
        x = {dist(rng), dist(rng)};
        norm2 += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(norm2);
    return v;
}

double norm(const std::vector<cplx>& v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

// dense exp(-iHt)|v> through the full eigendecomposition
std::vector<cplx> dense_evolve(const CsrMatrix& h, const std::vector<cplx>& v, double t) {
    const auto n = static_cast<Eigen::Index>(h.rows);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < h.rows; ++r)
        for (std::int64_t k = h.rowptr[r]; k < h.rowptr[r + 1]; ++k)
            d(static_cast<Eigen::Index>(r), h.col[static_cast<std::size_t>(k)]) =
                h.val[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
    Eigen::VectorXcd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = v[static_cast<std::size_t>(i)];
    Eigen::VectorXcd y = es.eigenvectors().transpose() * x;
    for (Eigen::Index i = 0; i < n; ++i) y(i) *= std::exp(cplx(0.0, -es.eigenvalues()(i) * t));
    y = es.eigenvectors() * y;
    std::vector<cplx> out(h.rows);
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = y(i);
    return out;
}

}  // namespace

TEST_CASE("t = 0 is the identity") {
    const auto p = params(4, 1.0, 2.0, 0.1, 3);
    const auto basis = build_basis(4, 4, 3);
    const auto h = build_hamiltonian(p, basis, Branch::e);
    const auto v = random_state(h.m.rows, 5);
    auto w = v;
    evolve_inplace(h.m, w, 0.0);
    CHECK(w == v);
}

TEST_CASE("diagonal Hamiltonians produce exact phases") {
    const auto p = params(3, 0.0, 2.0, 0.3, 3);  // J = 0: diagonal in the Fock basis
    const auto basis = build_basis(3, 3, 3);
    const auto h = build_hamiltonian(p, basis, Branch::e);
    const auto v = random_state(h.m.rows, 6);
    auto w = v;
    const double t = 0.83;
    evolve_inplace(h.m, w, t);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double e = h.m.val[static_cast<std::size_t>(h.m.rowptr[i])];  // diagonal entry
        CHECK(std::abs(w[i] - v[i] * std::exp(cplx(0.0, -e * t))) < 1e-11);
    }
}

TEST_CASE("certified against dense exponentiation on small systems") {
    // lattice Hamiltonian
    {
        const auto p = params(4, 1.0, 3.0, 0.2, 3);
        const auto basis = build_basis(4, 4, 3);
        const auto h = build_hamiltonian(p, basis, Branch::e);
        REQUIRE(h.m.rows <= 200);
        const auto v = random_state(h.m.rows, 7);
        for (double t : {0.05, 1.0, 7.3}) {
            auto w = evolve(h.m, v, t);
            const auto ref = dense_evolve(h.m, v, t);
            double dev = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) dev = std::max(dev, std::abs(w[i] - ref[i]));
            CHECK(dev < 1e-10);
        }
    }
    // stepped propagation accumulates no visible error either
    {
        const auto p = params(3, 0.7, 1.1, 0.4, 4);
        const auto basis = build_basis(3, 3, 4);
        const auto h = build_hamiltonian(p, basis, Branch::e);
        const auto v = random_state(h.m.rows, 8);
        auto w = v;
        const double dt = 0.02;
        for (int step = 1; step <= 200; ++step) evolve_inplace(h.m, w, dt);
        const auto ref = dense_evolve(h.m, v, 200 * dt);
        double dev = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) dev = std::max(dev, std::abs(w[i] - ref[i]));
        CHECK(dev < 1e-10);
    }
}

TEST_CASE("unitarity and energy conservation along a long trajectory") {
    const auto p = params(5, 1.0, 2.5, 0.15, 3);
    const auto basis = build_basis(5, 5, 3);
    const auto h = build_hamiltonian(p, basis, Branch::e);
    auto v = random_state(h.m.rows, 9);

    std::vector<cplx> hv(v.size());
    h.m.apply(v.data(), hv.data());
    cplx e0 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) e0 += std::conj(v[i]) * hv[i];

    for (int step = 0; step < 300; ++step) evolve_inplace(h.m, v, 0.05);

    CHECK(std::abs(norm(v) - 1.0) < 1e-10);
    h.m.apply(v.data(), hv.data());
    cplx e1 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) e1 += std::conj(v[i]) * hv[i];
    CHECK(std::abs(e1 - e0) < 1e-8 * std::abs(e0));
}

TEST_CASE("zero vectors and bad arguments") {
    const auto p = params(3, 1.0, 1.0, 0.0, 2);
    const auto basis = build_basis(3, 3, 2);
    const auto h = build_hamiltonian(p, basis, Branch::g);
    std::vector<cplx> zero(h.m.rows, 0.0);
    evolve_inplace(h.m, zero, 1.0);  // evolves to zero without complaint
    for (const auto& x : zero) CHECK(x == cplx(0.0));

    std::vector<cplx> wrong(h.m.rows + 1, 0.0);
    CHECK_THROWS_AS(evolve_inplace(h.m, wrong, 1.0), ConfigError);
    std::vector<cplx> v(h.m.rows, 0.0);
    v[0] = 1.0;
    CHECK_THROWS_AS(evolve_inplace(h.m, v, -1.0), ConfigError);
}
