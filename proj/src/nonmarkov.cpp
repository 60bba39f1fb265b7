#include "bhecho/nonmarkov.hpp"

#include <algorithm>
#include <cmath>

namespace bhecho {

std::vector<double> integrate_rate(const std::vector<double>& gamma, double dt) {
    if (dt <= 0.0) throw ConfigError("integrate_rate: dt must be positive");
    std::vector<double> Gamma(gamma.size(), 0.0);
    double acc = 0.0;
    for (std::size_t m = 1; m < gamma.size(); ++m) {
        acc += 0.5 * dt * (gamma[m - 1] + gamma[m]);
        Gamma[m] = -acc;
    }
    return Gamma;
}

std::vector<double> integrate_rate(const std::vector<double>& t, const std::vector<double>& gamma) {
    if (t.size() != gamma.size()) throw ConfigError("integrate_rate: length mismatch");
    if (t.size() < 2) throw ConfigError("integrate_rate: need at least two samples");
    const double dt = t[1] - t[0];
    for (std::size_t m = 1; m < t.size(); ++m)
        if (std::abs((t[m] - t[m - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw ConfigError("integrate_rate: non-uniform grid rejected");
    return integrate_rate(gamma, dt);
}

EchoTrace echo_from_gamma(const std::vector<double>& Gamma, const TimeGrid& grid, Provenance tag) {
    if (Gamma.size() != grid.samples()) throw ConfigError("echo_from_gamma: length mismatch");
    if (!Gamma.empty() && Gamma.front() != 0.0)
        throw ConfigError("echo_from_gamma: Gamma(0) must be 0");
    EchoTrace echo;
    echo.grid = grid;
    echo.tag = tag;
    echo.sqrtL.resize(Gamma.size());
    for (std::size_t m = 0; m < Gamma.size(); ++m) echo.sqrtL[m] = std::exp(Gamma[m]);
    return echo;
}

NMReport blp_measure(const EchoTrace& echo, double tol) {
    if (echo.sqrtL.size() < 2) throw ConfigError("blp_measure: need at least two samples");
    if (tol < 0.0) throw ConfigError("blp_measure: negative tolerance");

    NMReport rep;
    rep.tol = tol;
    rep.horizon = echo.grid.horizon();
    rep.source = echo.tag;

    const auto& e = echo.sqrtL;
    const std::size_t M = e.size();
    std::size_t i = 0;
    while (i + 1 < M) {
        while (i + 1 < M && e[i + 1] <= e[i]) ++i;  // descend to the local minimum
        const std::size_t lo = i;
        while (i + 1 < M && e[i + 1] > e[i]) ++i;   // strict ascent
        if (i == lo) break;                          // reached the end without a rise
        const double gain = e[i] - e[lo];
        if (gain > tol) {
            rep.intervals.push_back({echo.grid.time(lo), echo.grid.time(i), gain});
            rep.N += gain;
        }
    }
    return rep;
}

double average_density_offset(const std::vector<double>& dn1, const TimeGrid& grid, double T) {
    if (dn1.size() != grid.samples()) throw ConfigError("average_density_offset: length mismatch");
    if (T <= 0.0) throw ConfigError("average_density_offset: T must be positive");
    const auto m_end = static_cast<std::size_t>(std::llround(T / grid.dt));
    if (m_end < 1 || m_end > grid.steps)
        throw ConfigError("average_density_offset: trace shorter than the averaging window");
    double acc = 0.0;
    for (std::size_t m = 1; m <= m_end; ++m) acc += 0.5 * grid.dt * (dn1[m - 1] + dn1[m]);
    return acc / grid.time(m_end);
}

SweepResult normalize_sweep(std::vector<SweepPoint> points) {
    if (points.empty()) throw ConfigError("normalize_sweep: empty sweep");
    SweepResult res;
    res.N_max = 0.0;
    for (const auto& p : points)
        if (p.error.empty()) res.N_max = std::max(res.N_max, p.N);
    res.all_zero = res.N_max <= 0.0;
    for (auto& p : points)
        p.N_normalized = (res.all_zero || !p.error.empty()) ? 0.0 : p.N / res.N_max;
    res.points = std::move(points);
    return res;
}

}  // namespace bhecho
