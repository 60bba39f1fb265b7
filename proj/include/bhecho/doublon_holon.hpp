#pragma once

#include "bhecho/params.hpp"
#include "bhecho/trace.hpp"

namespace bhecho {

// Momentum-resolved data of the strong-coupling quasiparticle model built
// on the truncated local basis {nbar-1, nbar, nbar+1}: doublon/holon
// frequencies and the Bogoliubov mixing angle of each k sector.
struct DHModel {
    double U = 0.0, J = 0.0;
    int nbar = 1;
    bool thermodynamic = false;  // midpoint momentum quadrature instead of lattice momenta
    int k_count = 0;             // number of momentum nodes
    std::vector<double> k;
    std::vector<double> theta;     // odd in k, -> 0 as J/U -> 0
    std::vector<double> omega_d;   // even in k
    std::vector<double> omega_h;   // even in k

    std::size_t size() const { return k.size(); }
};

// Per-sector quantities from one numeric 2x2 diagonalization; exposed so
// the model can be evaluated at arbitrary momentum (revival estimates,
// convergence probes).
struct DHSector {
    double theta, omega_d, omega_h;
};
DHSector dh_sector(double U, double J, int nbar, double k);

inline constexpr int kThermodynamic = -1;

// Validity gate U/J >= 4 (nbar + 1). k_count = kThermodynamic selects the
// default 1024-node midpoint quadrature over (-pi, pi]; a positive k_count
// with thermodynamic=false places lattice momenta 2 pi m / k_count.
DHModel dh_model(const ModelParams& p, int k_count = kThermodynamic);
DHModel dh_model_thermodynamic(const ModelParams& p, int k_count = 1024);

// Pair-mode arrays (amplitude, frequency) over all (k, q) combinations;
// the shared representation consumed by the mode-sum kernels.
struct PairModes {
    std::vector<double> c1, c2, w;
};
PairModes pair_modes(const DHModel& m);

double gamma_m(const DHModel& m, double Ue, double t);
double gamma_m_integral(const DHModel& m, double Ue, double t);  // Gamma_M(t) <= 0

// Overloads on prebuilt pair arrays, for callers evaluating many times.
double gamma_m(const PairModes& pm, double Ue, double t);
double gamma_m_integral(const PairModes& pm, double Ue, double t);

// 2 pi over the pair energy at k = pi/2; tends to 2 pi / U at strong
// coupling.
double first_revival_time(const DHModel& m);

DephasingTrace mott_trace(const DHModel& model, double Ue, const TimeGrid& grid);
DephasingTrace mott_trace(const ModelParams& p, const TimeGrid& grid, int k_count = kThermodynamic);

}  // namespace bhecho
