#pragma once

#include "bhecho/csr.hpp"

namespace bhecho {

struct EvolveOptions {
    double tol = 1e-12;       // per unit time, relative to the state norm
    int max_krylov = 48;      // Lanczos subspace cap per substep
    int max_substeps = 1u << 20;
    double norm_drift_tol = 1e-10;  // unitarity monitor, not a correction
};

struct EvolveStats {
    int substeps = 0;
    int matvecs = 0;
    double error_estimate = 0.0;  // accumulated a-posteriori estimate
    double norm_drift = 0.0;      // | ||psi|| - ||psi0|| | / ||psi0||
};

// psi <- exp(-i H t) psi for real-symmetric CSR H, by Lanczos (Krylov)
// substepping with adaptive step control. Norm drift is monitored against
// norm_drift_tol and reported, never silently renormalized; exceeding the
// monitor raises ConvergenceError, as does running out of substeps.
EvolveStats evolve_inplace(const CsrMatrix& H, std::vector<cplx>& psi, double t,
                           const EvolveOptions& opt = {});

std::vector<cplx> evolve(const CsrMatrix& H, const std::vector<cplx>& psi, double t,
                         const EvolveOptions& opt = {});

}  // namespace bhecho
