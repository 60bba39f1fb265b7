#include "bhecho/bogoliubov.hpp"

#include <cmath>
#include <numbers>

#include "bhecho/kernels.hpp"

namespace bhecho {

namespace {

// packed (c1, c2, w) arrays for the fused kernel:
// gamma = Ue^2 sum c1 sin(w t), Gamma = -Ue^2 sum c2 (1 - cos(w t))
struct Packed {
    std::vector<double> c1, c2, w;
};

Packed pack(const ModeSet& ms) {
    Packed p;
    p.c1.reserve(ms.modes.size());
    p.c2.reserve(ms.modes.size());
    p.w.reserve(ms.modes.size());
    for (const auto& m : ms.modes) {
        p.c1.push_back(m.weight / m.omega);
        p.c2.push_back(m.weight / (m.omega * m.omega));
        p.w.push_back(m.omega);
    }
    return p;
}

}  // namespace

ModeSet sf_modes(const ModelParams& p) {
    p.validate();
    if (p.U == 0.0 && p.J == 0.0)
        throw GuardError("sf_modes: U = J = 0 leaves every mode at zero frequency");
    if (p.Ns < 2) throw GuardError("sf_modes: need at least two sites for a nonzero mode");

    ModeSet ms;
    ms.Ns = p.Ns;
    ms.n0 = p.nbar;  // full condensate fraction at leading order
    if (p.J > 0.0 && p.U / p.J > 1.0)
        ms.warnings.push_back("superfluid model evaluated at U/J > 1, outside its comfort zone");

    // momenta k_m = 2 pi m / Ns over (-pi, pi], m != 0
    const int m_lo = p.Ns % 2 == 0 ? -p.Ns / 2 + 1 : -(p.Ns - 1) / 2;
    const int m_hi = p.Ns % 2 == 0 ? p.Ns / 2 : (p.Ns - 1) / 2;
    for (int m = m_lo; m <= m_hi; ++m) {
        if (m == 0) continue;
        const double k = 2.0 * std::numbers::pi * m / p.Ns;
        const double s = std::sin(0.5 * k);
        const double eps = 4.0 * p.J * s * s;
        const double omega = std::sqrt(eps * (eps + 2.0 * p.U * ms.n0));
        if (omega <= 0.0)
            throw GuardError("sf_modes: degenerate zero-frequency mode at k = " + std::to_string(k));
        const double uv2 = eps / omega;  // (u_k + v_k)^2
        ms.modes.push_back({k, omega, ms.n0 * uv2 / p.Ns});
    }
    return ms;
}

double gamma_sf(const ModeSet& ms, double Ue, double t) {
    double acc = 0.0;
    for (const auto& m : ms.modes) acc += m.weight * std::sin(m.omega * t) / m.omega;
    return Ue * Ue * acc;
}

double gamma_sf_integral(const ModeSet& ms, double Ue, double t) {
    double acc = 0.0;
    for (const auto& m : ms.modes)
        acc += m.weight * (1.0 - std::cos(m.omega * t)) / (m.omega * m.omega);
    return -Ue * Ue * acc;
}

double recurrence_time(const ModeSet& ms) {
    if (ms.modes.empty()) throw GuardError("recurrence_time: empty mode set");
    const Mode* best = &ms.modes.front();
    for (const auto& m : ms.modes)
        if (std::abs(m.k) < std::abs(best->k)) best = &m;
    return 2.0 * std::numbers::pi / best->omega;
}

double sound_speed(const ModelParams& p) { return std::sqrt(2.0 * p.J * p.U * p.nbar); }

DephasingTrace sf_trace(const ModelParams& p, const TimeGrid& grid) {
    const ModeSet ms = sf_modes(p);
    const Packed pk = pack(ms);
    const double ue2 = p.Ue * p.Ue;

    DephasingTrace tr;
    tr.grid = grid;
    tr.tag = Provenance::sf_analytic;
    tr.warnings = ms.warnings;
    const std::size_t M = grid.samples();
    tr.gamma.resize(M);
    tr.Gamma.resize(M);
    tr.sqrtL.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
        const auto sums = kernels::mode_sums(pk.c1.data(), pk.c2.data(), pk.w.data(),
                                             pk.w.size(), grid.time(m));
        tr.gamma[m] = ue2 * sums.rate;
        tr.Gamma[m] = -ue2 * sums.decay;
        tr.sqrtL[m] = std::exp(tr.Gamma[m]);
    }
    tr.gamma[0] = 0.0;
    tr.Gamma[0] = 0.0;
    tr.sqrtL[0] = 1.0;
    return tr;
}

}  // namespace bhecho
