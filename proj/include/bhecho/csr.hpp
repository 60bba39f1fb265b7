#pragma once

#include <cstdint>
#include <vector>

#include "bhecho/common.hpp"

namespace bhecho {

// Sparse real-symmetric matrix in CSR form. States are complex, matrix
// elements of the lattice Hamiltonians are real, so the hot product is
// real-matrix times complex-vector (see kernels.hpp).
struct CsrMatrix {
    std::size_t rows = 0;
    std::vector<std::int64_t> rowptr;   // rows + 1 entries
    std::vector<std::int32_t> col;
    std::vector<double> val;

    std::size_t nnz() const { return val.size(); }

    // y = A x (dispatched to the active kernel backend)
    void apply(const cplx* x, cplx* y) const;
    void apply(const std::vector<cplx>& x, std::vector<cplx>& y) const;

    // y = A x for real vectors (scalar path; used by the eigensolver)
    void apply_real(const double* x, double* y) const;

    // Upper bound on the spectral norm from row sums.
    double gershgorin_bound() const;
};

}  // namespace bhecho
