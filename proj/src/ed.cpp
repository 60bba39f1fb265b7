#include "bhecho/ed.hpp"

#include <cmath>

namespace bhecho {

namespace {

const char* provenance_names[] = {"ed", "sf-analytic", "mott-analytic"};

FockBasis guarded_basis(const ModelParams& p, const EdOptions& opt) {
    p.validate();
    const std::size_t dim = FockBasis::dimension(p.Ns, p.total_particles(), p.nmax);
    if (dim == 0) throw ConfigError("ed: empty basis");
    if (dim > opt.dim_cap)
        throw GuardError("ed: basis dimension " + std::to_string(dim) +
                         " exceeds the cap " + std::to_string(opt.dim_cap));
    return build_basis(p.Ns, p.total_particles(), p.nmax);
}

std::vector<cplx> to_complex(const std::vector<double>& v) {
    return {v.begin(), v.end()};
}

double overlap_magnitude(const std::vector<double>& a, const std::vector<cplx>& b) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return std::abs(acc);
}

double diag_expectation(const std::vector<double>& diag, const std::vector<cplx>& psi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < diag.size(); ++i) acc += diag[i] * std::norm(psi[i]);
    return acc;
}

}  // namespace

const char* to_string(Provenance p) { return provenance_names[static_cast<int>(p)]; }

TimeGrid TimeGrid::cover(double dt, double T) {
    if (dt <= 0.0) throw ConfigError("time grid: dt must be positive");
    if (T < 0.0) throw ConfigError("time grid: negative horizon");
    return TimeGrid{dt, static_cast<std::size_t>(std::ceil(T / dt - 1e-12))};
}

void EchoTrace::validate(double tol) const {
    if (sqrtL.size() != grid.samples()) throw ConfigError("echo trace: length mismatch");
    if (sqrtL.empty() || sqrtL.front() != 1.0)
        throw ConfigError("echo trace: sqrtL(0) must be exactly 1");
    for (double v : sqrtL)
        if (v < -tol || v > 1.0 + tol) throw ConfigError("echo trace: value outside [0,1]");
}

EdRun ed_run(const ModelParams& p, const TimeGrid& grid, bool with_dn1, const EdOptions& opt) {
    const FockBasis basis = guarded_basis(p, opt);
    const auto hg = build_hamiltonian(p, basis, Branch::g);
    const auto he = build_hamiltonian(p, basis, Branch::e);

    const auto gs = ground_state(hg.m, opt.gs);

    EdRun run;
    run.ground_energy = gs.energy;
    run.ground_gap = gs.gap;

    const std::size_t M = grid.samples();
    DephasingTrace& tr = run.trace;
    tr.grid = grid;
    tr.tag = Provenance::ed;
    tr.sqrtL.assign(M, 0.0);
    tr.sqrtL[0] = 1.0;

    std::vector<double> n1;
    double n1_gs = 0.0;
    if (with_dn1) {
        const int site = p.impurity_site() + 1;
        if (site >= p.Ns) throw ConfigError("ed: impurity has no right neighbour for dn1");
        n1 = number_operator(site, basis);
        n1_gs = 0.0;
        for (std::size_t i = 0; i < n1.size(); ++i) n1_gs += n1[i] * gs.state[i] * gs.state[i];
        tr.dn1.emplace(M, 0.0);
    }

    auto psi = to_complex(gs.state);
    for (std::size_t m = 1; m < M; ++m) {
        const auto stats = evolve_inplace(he.m, psi, grid.dt, opt.evolve);
        run.max_norm_drift = std::max(run.max_norm_drift, stats.norm_drift);
        double nrm = 0.0;
        for (const auto& x : psi) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (std::abs(nrm - 1.0) > opt.evolve.norm_drift_tol)
            throw ConvergenceError("ed: propagated state norm drifted to " + std::to_string(nrm));
        tr.sqrtL[m] = std::min(overlap_magnitude(gs.state, psi), 1.0);
        if (with_dn1) (*tr.dn1)[m] = diag_expectation(n1, psi) - n1_gs;
    }

    // Gamma = log sqrtL; gamma from centered differences (gamma(0) = 0 exactly)
    tr.Gamma.assign(M, 0.0);
    for (std::size_t m = 0; m < M; ++m) tr.Gamma[m] = std::log(tr.sqrtL[m]);
    tr.gamma.assign(M, 0.0);
    for (std::size_t m = 1; m + 1 < M; ++m)
        tr.gamma[m] = -(tr.Gamma[m + 1] - tr.Gamma[m - 1]) / (2.0 * grid.dt);
    if (M > 1) tr.gamma[M - 1] = -(tr.Gamma[M - 1] - tr.Gamma[M - 2]) / grid.dt;

    return run;
}

EchoTrace loschmidt_echo(const ModelParams& p, const TimeGrid& grid, const EdOptions& opt) {
    return ed_run(p, grid, false, opt).trace.echo();
}

std::vector<double> density_trace(const ModelParams& p, int site_offset, const TimeGrid& grid,
                                  const EdOptions& opt) {
    const int site = p.impurity_site() + site_offset;
    if (site < 0 || site >= p.Ns) throw ConfigError("density_trace: site offset out of range");

    const FockBasis basis = guarded_basis(p, opt);
    const auto hg = build_hamiltonian(p, basis, Branch::g);
    const auto he = build_hamiltonian(p, basis, Branch::e);
    const auto gs = ground_state(hg.m, opt.gs);

    const auto nd = number_operator(site, basis);
    double n_gs = 0.0;
    for (std::size_t i = 0; i < nd.size(); ++i) n_gs += nd[i] * gs.state[i] * gs.state[i];

    std::vector<double> out(grid.samples(), 0.0);
    auto psi = to_complex(gs.state);
    for (std::size_t m = 1; m < grid.samples(); ++m) {
        evolve_inplace(he.m, psi, grid.dt, opt.evolve);
        out[m] = diag_expectation(nd, psi) - n_gs;
    }
    return out;
}

std::vector<cplx> density_correlation(const ModelParams& p, const TimeGrid& grid,
                                      const EdOptions& opt) {
    const FockBasis basis = guarded_basis(p, opt);
    const auto hg = build_hamiltonian(p, basis, Branch::g);
    const auto gs = ground_state(hg.m, opt.gs);

    const auto n0 = number_operator(p.impurity_site(), basis);
    double n_gs = 0.0;
    for (std::size_t i = 0; i < n0.size(); ++i) n_gs += n0[i] * gs.state[i] * gs.state[i];

    // u = (n0 - <n0>) |phi0>; C(t) = e^{i E0 t} <u | u(t)>
    std::vector<cplx> u0(basis.dim());
    double u_norm2 = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        u0[i] = (n0[i] - n_gs) * gs.state[i];
        u_norm2 += std::norm(u0[i]);
    }

    std::vector<cplx> C(grid.samples(), 0.0);
    C[0] = u_norm2;
    if (u_norm2 == 0.0) return C;  // e.g. J = 0 at unit filling: Fock ground state

    auto u = u0;
    for (std::size_t m = 1; m < grid.samples(); ++m) {
        evolve_inplace(hg.m, u, grid.dt, opt.evolve);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u0[i]) * u[i];
        C[m] = std::exp(cplx(0.0, gs.energy * grid.time(m))) * acc;
    }
    return C;
}

}  // namespace bhecho
