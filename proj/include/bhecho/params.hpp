#pragma once

#include <string>

#include "bhecho/common.hpp"

namespace bhecho {

enum class Boundary { open, periodic };

// Physical parameters of one lattice scenario. Energies in units where
// hbar = 1; J sets the inverse time unit.
struct ModelParams {
    double J = 1.0;        // hopping
    double U = 1.0;        // on-site interaction
    double Ue = 0.01;      // impurity coupling
    int Ns = 8;            // lattice sites
    int nbar = 1;          // filling, total particles = nbar*Ns
    int nmax = 4;          // local occupation cutoff
    Boundary bc = Boundary::open;
    int i0 = -1;           // impurity site, -1 = center (Ns/2)

    int total_particles() const { return nbar * Ns; }
    int impurity_site() const { return i0 < 0 ? Ns / 2 : i0; }

    // Throws ConfigError if any invariant is violated.
    void validate() const;
};

std::string to_string(Boundary bc);
Boundary boundary_from_string(const std::string& s);

}  // namespace bhecho
