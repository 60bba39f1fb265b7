#pragma once

#include "bhecho/csr.hpp"

namespace bhecho {

struct GroundStateOptions {
    std::size_t dense_threshold = 2000;  // dense solver below, Lanczos above
    double residual_tol = 1e-9;          // relative to the spectral-norm estimate
    double degeneracy_tol = 1e-8;        // gap guard, relative to the norm estimate
    int max_subspace = 350;
    int max_restarts = 8;
    unsigned seed = 0x5eed;              // deterministic start vector
};

struct GroundStateResult {
    double energy = 0.0;
    std::vector<double> state;     // real (the Hamiltonians are real symmetric)
    double residual = 0.0;         // ||H x - E x||
    double norm_estimate = 0.0;    // spectral norm estimate used for the tolerances
    double gap = 0.0;              // E1 - E0 (exact below dense_threshold, Ritz above)
    int iterations = 0;
};

// Lowest eigenpair of a real-symmetric CSR matrix. Dense Eigen solve for
// small dimensions, Lanczos with full reorthogonalization above. Throws
// ConvergenceError with the residual if the iteration cap is exhausted and
// GuardError when the ground state is (near-)degenerate.
GroundStateResult ground_state(const CsrMatrix& H, const GroundStateOptions& opt = {});

// Spectral norm estimate by power iteration (deterministic start).
double spectral_norm_estimate(const CsrMatrix& H, int iterations = 30, unsigned seed = 0x5eed);

}  // namespace bhecho
