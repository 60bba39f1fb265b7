#pragma once

#include "bhecho/params.hpp"
#include "bhecho/trace.hpp"

namespace bhecho {

struct Mode {
    double k;       // momentum in (-pi, pi], k = 0 excluded (condensate)
    double omega;   // quasiparticle frequency
    double weight;  // |beta_k|^2 / Ns^2
};

struct ModeSet {
    std::vector<Mode> modes;
    double n0 = 1.0;  // condensate density, taken as the filling
    int Ns = 0;
    std::vector<std::string> warnings;
};

// Lattice Bogoliubov modes: eps_k = 4 J sin^2(k/2), omega_k =
// sqrt(eps_k (eps_k + 2 U n0)), weight n0 (eps_k/omega_k) / Ns. Periodic
// momenta are used regardless of the real-space boundary choice; the
// mean-field model is translation invariant by construction. U/J > 1 only
// earns a warning: mean-field reliability degrades towards the transition.
ModeSet sf_modes(const ModelParams& p);

double gamma_sf(const ModeSet& modes, double Ue, double t);

// Closed form of Gamma(t) = -int_0^t gamma; always <= 0.
double gamma_sf_integral(const ModeSet& modes, double Ue, double t);

// 2 pi / omega at the smallest nonzero |k|; the finite-size revival time.
double recurrence_time(const ModeSet& modes);

// Speed of sound of the mean-field model.
double sound_speed(const ModelParams& p);

// gamma/Gamma/echo on a grid through the shared mode-sum kernels.
DephasingTrace sf_trace(const ModelParams& p, const TimeGrid& grid);

}  // namespace bhecho
