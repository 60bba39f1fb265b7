#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bhecho/doublon_holon.hpp"
#include "bhecho/nonmarkov.hpp"

using namespace bhecho;

namespace {

ModelParams params(double U, int nbar = 1, double J = 1.0, double Ue = 0.01, int Ns = 64) {
    ModelParams p;
    p.U = U;
    p.J = J;
    p.Ue = Ue;
    p.nbar = nbar;
    p.nmax = nbar + 3;
    p.Ns = Ns;
    return p;
}

double max_pair_deviation(const DHModel& m) {
    // against the strong-coupling asymptotic U - 2J(2nbar+1) cos k
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double asym = m.U - 2.0 * m.J * (2 * m.nbar + 1) * std::cos(m.k[i]);
        worst = std::max(worst, std::abs(m.omega_d[i] + m.omega_h[i] - asym));
    }
    return worst;
}

}  // namespace

TEST_CASE("atomic limit: flat pair energy U, no mixing") {
    const auto m = dh_model(params(3.0, 2, 0.0), 32);
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(m.omega_d[i] + m.omega_h[i] == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(m.theta[i] == 0.0);
    }
    CHECK(first_revival_time(m) == doctest::Approx(2.0 * std::numbers::pi / 3.0).epsilon(1e-14));
}

TEST_CASE("validity gate names the bound") {
    try {
        dh_model(params(7.9), 32);
        FAIL("expected a guard error");
    } catch (const GuardError& e) {
        CHECK(std::string(e.what()).find("4(nbar+1)") != std::string::npos);
    }
    CHECK_NOTHROW(dh_model(params(8.0), 32));
    CHECK_THROWS_AS(dh_model(params(11.9, 2), 32), GuardError);  // nbar = 2 gate at 12
}

TEST_CASE("mixing angle is odd in k, vanishes at the zone center/edge, shrinks as J/U") {
    const auto m = dh_model_thermodynamic(params(30.0), 256);
    for (std::size_t i = 0; i < m.size(); ++i) {
        // midpoint nodes are symmetric: -k sits at the mirrored index
        const std::size_t j = m.size() - 1 - i;
        CHECK(m.k[i] == doctest::Approx(-m.k[j]).scale(1.0).epsilon(1e-12));
        CHECK(m.theta[i] == doctest::Approx(-m.theta[j]).scale(1.0).epsilon(1e-12));
        CHECK(std::abs(m.theta[i]) < 0.5 * std::numbers::pi);
    }
    const auto lattice = dh_model(params(30.0), 64);  // grid containing k = 0 and pi
    for (std::size_t i = 0; i < lattice.size(); ++i)
        if (lattice.k[i] == 0.0 || lattice.k[i] == doctest::Approx(std::numbers::pi))
            CHECK(std::abs(lattice.theta[i]) < 1e-14);

    const auto weak = dh_model_thermodynamic(params(3000.0), 64);
    const double bound = 1.1 * 4.0 * std::sqrt(2.0) / 3000.0;  // ~ 2 lambda / S
    for (std::size_t i = 0; i < weak.size(); ++i) CHECK(std::abs(weak.theta[i]) < bound);
}

TEST_CASE("ground-state pair density matches strong-coupling perturbation theory") {
    // (1/K^2) sum sin^2((theta_k - theta_q)/2) -> 4 nbar (nbar+1) (J/U)^2;
    // exact-diagonalization value at U/J = 30 on the truncated basis is
    // 8.80e-3 against 8.94e-3 from the model (1.6% apart)
    const auto m = dh_model_thermodynamic(params(30.0), 256);
    double var = 0.0;
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b) {
            const double s = std::sin(0.5 * (m.theta[a] - m.theta[b]));
            var += s * s;
        }
    var /= double(m.size()) * double(m.size());
    CHECK(var == doctest::Approx(8.0 / 900.0).epsilon(0.02));
}

TEST_CASE("pair dispersion approaches the strong-coupling asymptotic as J^2/U") {
    const auto dev30 = max_pair_deviation(dh_model_thermodynamic(params(30.0), 512));
    // frozen from the model itself (numeric diagonalization): 0.534 J
    CHECK(dev30 > 0.45);
    CHECK(dev30 < 0.60);
    const auto dev60 = max_pair_deviation(dh_model_thermodynamic(params(60.0), 512));
    CHECK(dev60 / dev30 == doctest::Approx(0.5).epsilon(0.15));  // 1/U scaling
    // the linear-in-J term itself is exact: deviations stay O(J^2/U)
    CHECK(dev60 < 0.30);
}

TEST_CASE("pair energies are positive throughout the valid regime") {
    for (double U : {8.0, 12.0, 30.0}) {
        const auto m = dh_model_thermodynamic(params(U), 128);
        double wd_min = 1e300, wh_min = 1e300;
        for (std::size_t i = 0; i < m.size(); ++i) {
            wd_min = std::min(wd_min, m.omega_d[i]);
            wh_min = std::min(wh_min, m.omega_h[i]);
        }
        CHECK(wd_min + wh_min > 0.0);
        for (std::size_t a = 0; a < m.size(); ++a)
            CHECK(m.omega_d[a] + m.omega_h[a] > 0.0);
    }
}

TEST_CASE("rate: zero at t = 0, identically zero without mixing, shift-invariant") {
    const auto m = dh_model_thermodynamic(params(30.0), 64);
    CHECK(gamma_m(m, 0.01, 0.0) == 0.0);

    const auto atomic = dh_model(params(5.0, 1, 0.0), 32);  // J = 0, theta = 0
    for (double t = 0.1; t < 2.0; t += 0.3) CHECK(std::abs(gamma_m(atomic, 0.01, t)) < 1e-12);

    auto shifted = m;
    for (auto& th : shifted.theta) th += 0.3;  // only differences enter
    for (double t : {0.05, 0.11, 0.31})
        CHECK(gamma_m(shifted, 0.01, t) == doctest::Approx(gamma_m(m, 0.01, t)).epsilon(1e-12));
}

TEST_CASE("closed-form Gamma matches quadrature of the rate to 1e-8 relative") {
    // trapezoid needs (omega dt)^2 / 12 below 1e-8 at omega ~ U + bandwidth
    const auto m = dh_model_thermodynamic(params(30.0), 64);
    const PairModes pm = pair_modes(m);
    const auto grid = TimeGrid::cover(5e-6, 0.1);
    std::vector<double> gamma(grid.samples());
    for (std::size_t i = 0; i < grid.samples(); ++i) gamma[i] = gamma_m(pm, 0.01, grid.time(i));
    const auto quad = integrate_rate(gamma, grid.dt);
    double max_cf = 0.0;
    for (std::size_t i = 0; i < grid.samples(); ++i)
        max_cf = std::max(max_cf, std::abs(gamma_m_integral(pm, 0.01, grid.time(i))));
    for (std::size_t i = 0; i < grid.samples(); i += 11) {
        const double cf = gamma_m_integral(pm, 0.01, grid.time(i));
        CHECK(std::abs(cf - quad[i]) <= 1e-8 * max_cf);
        CHECK(cf <= 0.0);
    }
}

TEST_CASE("the rate turns negative shortly after pi/U deep in the insulator") {
    // measured first crossing at 1.06 * pi / U for U/J = 30
    for (double U : {8.0, 30.0}) {
        const auto m = dh_model_thermodynamic(params(U), 256);
        const PairModes pm = pair_modes(m);
        const double dt = std::numbers::pi / U / 200.0;
        double first_neg = -1.0;
        for (double t = dt; t <= 4.0 * std::numbers::pi / U; t += dt)
            if (gamma_m(pm, 0.01, t) < 0.0) {
                first_neg = t;
                break;
            }
        REQUIRE(first_neg > 0.0);  // memory effects exist in the valid window
        if (U == 30.0) CHECK(first_neg == doctest::Approx(std::numbers::pi / U).epsilon(0.15));
    }
}

TEST_CASE("first revival time: exact in the atomic limit, near 2 pi / U at strong coupling") {
    CHECK(first_revival_time(dh_model(params(12.0, 1, 0.0), 16)) ==
          doctest::Approx(2.0 * std::numbers::pi / 12.0).epsilon(1e-14));
    const double t30 = first_revival_time(dh_model_thermodynamic(params(30.0), 64));
    CHECK(t30 == doctest::Approx(2.0 * std::numbers::pi / 30.0).epsilon(0.05));
    const double t45 = first_revival_time(dh_model_thermodynamic(params(45.0), 64));
    CHECK(t45 < t30);  // revivals accelerate with interaction strength
}

TEST_CASE("thermodynamic quadrature is self-converged at the default node counts") {
    const auto a = dh_model_thermodynamic(params(30.0), 512);
    const auto b = dh_model_thermodynamic(params(30.0), 1024);
    const PairModes pa = pair_modes(a), pb = pair_modes(b);
    double worst = 0.0, scale = 0.0;
    for (double t = 0.0; t <= 0.63; t += 0.021) {
        const double ga = gamma_m(pa, 0.01, t), gb = gamma_m(pb, 0.01, t);
        worst = std::max(worst, std::abs(ga - gb));
        scale = std::max(scale, std::abs(gb));
    }
    CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("the finite lattice agrees with the thermodynamic limit at Ns = 96") {
    const auto p = params(30.0, 1, 1.0, 0.01, 96);
    const auto grid = TimeGrid::cover(2.0 * std::numbers::pi / 30.0 / 32.0,
                                      20.0 * 2.0 * std::numbers::pi / 30.0);
    const auto finite = blp_measure(mott_trace(dh_model(p, 96), p.Ue, grid).echo(), 1e-12);
    const auto thermo =
        blp_measure(mott_trace(dh_model_thermodynamic(p, 1024), p.Ue, grid).echo(), 1e-12);
    CHECK(finite.N == doctest::Approx(thermo.N).epsilon(0.02));
}
