#pragma once

#include <iosfwd>

#include "bhecho/basis.hpp"
#include "bhecho/csr.hpp"
#include "bhecho/params.hpp"

namespace bhecho {

enum class Branch { g, e };

// Sparse Hamiltonian over a FockBasis together with the branch it encodes.
// g: bare lattice; e: lattice plus the impurity shift Ue * n_{i0}.
// The bare impurity level splitting is deliberately absent: it only
// contributes a global phase to the coherence and drops out of |rho_eg|.
struct HamiltonianMatrix {
    CsrMatrix m;
    Branch branch = Branch::g;
};

HamiltonianMatrix build_hamiltonian(const ModelParams& p, const FockBasis& basis, Branch branch);

// Diagonal of the site-number observable in the given basis.
std::vector<double> number_operator(int site, const FockBasis& basis);

// Debug exports: coordinate-list text (row col real imag) and one
// occupation vector per line.
void export_matrix_coo(const CsrMatrix& m, std::ostream& os);
void export_basis(const FockBasis& basis, std::ostream& os);

}  // namespace bhecho
