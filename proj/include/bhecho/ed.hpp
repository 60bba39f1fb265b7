#pragma once

#include "bhecho/hamiltonian.hpp"
#include "bhecho/krylov.hpp"
#include "bhecho/lanczos.hpp"
#include "bhecho/trace.hpp"

namespace bhecho {

struct EdOptions {
    std::size_t dim_cap = 2'000'000;  // refuse exponentially infeasible requests
    GroundStateOptions gs;
    EvolveOptions evolve;
};

// Exact echo sqrt(L)(t) = |<phi0| exp(-i H_e t) |phi0>| with |phi0> the
// H_g ground state. The exp(+i H_g t) factor of the echo definition is a
// global phase on an eigenstate and cancels in the modulus.
EchoTrace loschmidt_echo(const ModelParams& p, const TimeGrid& grid, const EdOptions& opt = {});

// delta n_site(t) = <n_site>(t) - <n_site>_GS under the e-branch evolution.
// `site_offset` is counted from the impurity site: offset 1 is the right
// neighbour ("site 1").
std::vector<double> density_trace(const ModelParams& p, int site_offset, const TimeGrid& grid,
                                  const EdOptions& opt = {});

// Connected ground-state correlation C(t) = <dn0(t) dn0(0)>_GS with
// dn0 = n_{i0} - <n_{i0}>_GS, propagated under the g branch.
std::vector<cplx> density_correlation(const ModelParams& p, const TimeGrid& grid,
                                      const EdOptions& opt = {});

// One shared pipeline for the echo and the neighbour-density series (a
// single propagation serves both); the individual operations above are
// thin wrappers.
struct EdRun {
    DephasingTrace trace;      // gamma from centered differences of log sqrtL
    double ground_energy = 0.0;
    double ground_gap = 0.0;
    double max_norm_drift = 0.0;
};

EdRun ed_run(const ModelParams& p, const TimeGrid& grid, bool with_dn1, const EdOptions& opt = {});

}  // namespace bhecho
