#include "bhecho/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

namespace bhecho {

namespace {

std::vector<std::pair<int, int>> bond_list(int sites, Boundary bc) {
    std::vector<std::pair<int, int>> bonds;
    for (int i = 0; i + 1 < sites; ++i) bonds.emplace_back(i, i + 1);
    // For Ns = 2 the wrap-around bond coincides with the single open bond
    // and must not be counted twice.
    if (bc == Boundary::periodic && sites > 2) bonds.emplace_back(sites - 1, 0);
    return bonds;
}

void check_basis(const ModelParams& p, const FockBasis& basis) {
    if (basis.sites() != p.Ns || basis.total() != p.total_particles() || basis.cap() != p.nmax)
        throw ConfigError("basis does not match model parameters");
}

}  // namespace

HamiltonianMatrix build_hamiltonian(const ModelParams& p, const FockBasis& basis, Branch branch) {
    p.validate();
    check_basis(p, basis);

    const auto bonds = bond_list(p.Ns, p.bc);
    const int i0 = p.impurity_site();
    const std::size_t dim = basis.dim();

    CsrMatrix m;
    m.rows = dim;
    m.rowptr.assign(dim + 1, 0);
    m.col.reserve(dim * (1 + 2 * bonds.size()));
    m.val.reserve(dim * (1 + 2 * bonds.size()));

    std::vector<std::uint8_t> hop(static_cast<std::size_t>(p.Ns));
    std::vector<std::pair<std::int32_t, double>> row;
    for (std::size_t b = 0; b < dim; ++b) {
        row.clear();
        const auto s = basis.state(b);

        double diag = 0.0;
        for (int i = 0; i < p.Ns; ++i) {
            const double n = s[static_cast<std::size_t>(i)];
            diag += 0.5 * p.U * n * (n - 1.0);
        }
        if (branch == Branch::e) diag += p.Ue * s[static_cast<std::size_t>(i0)];
        row.emplace_back(static_cast<std::int32_t>(b), diag);

        if (p.J != 0.0) {
            for (const auto& [i, j] : bonds) {
                const auto si = s[static_cast<std::size_t>(i)];
                const auto sj = s[static_cast<std::size_t>(j)];
                // a_i^dag a_j : move one particle j -> i
                if (sj > 0 && si < p.nmax) {
                    std::copy(s.begin(), s.end(), hop.begin());
                    --hop[static_cast<std::size_t>(j)];
                    ++hop[static_cast<std::size_t>(i)];
                    const double amp = -p.J * std::sqrt(double(sj) * (double(si) + 1.0));
                    row.emplace_back(static_cast<std::int32_t>(basis.index_of(hop)), amp);
                }
                // a_j^dag a_i : move one particle i -> j
                if (si > 0 && sj < p.nmax) {
                    std::copy(s.begin(), s.end(), hop.begin());
                    --hop[static_cast<std::size_t>(i)];
                    ++hop[static_cast<std::size_t>(j)];
                    const double amp = -p.J * std::sqrt(double(si) * (double(sj) + 1.0));
                    row.emplace_back(static_cast<std::int32_t>(basis.index_of(hop)), amp);
                }
            }
        }

        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // merge duplicates (possible only for pathological bond lists)
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k + 1 < row.size() && row[k + 1].first == row[k].first) {
                row[k + 1].second += row[k].second;
                continue;
            }
            m.col.push_back(row[k].first);
            m.val.push_back(row[k].second);
        }
        m.rowptr[b + 1] = static_cast<std::int64_t>(m.col.size());
    }

    return HamiltonianMatrix{std::move(m), branch};
}

std::vector<double> number_operator(int site, const FockBasis& basis) {
    if (site < 0 || site >= basis.sites()) throw ConfigError("number_operator: site out of range");
    std::vector<double> diag(basis.dim());
    for (std::size_t b = 0; b < basis.dim(); ++b)
        diag[b] = basis.state(b)[static_cast<std::size_t>(site)];
    return diag;
}

void export_matrix_coo(const CsrMatrix& m, std::ostream& os) {
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::int64_t k = m.rowptr[r]; k < m.rowptr[r + 1]; ++k)
            os << r << ' ' << m.col[static_cast<std::size_t>(k)] << ' '
               << m.val[static_cast<std::size_t>(k)] << " 0\n";
}

void export_basis(const FockBasis& basis, std::ostream& os) {
    for (std::size_t b = 0; b < basis.dim(); ++b) {
        const auto s = basis.state(b);
        for (int i = 0; i < basis.sites(); ++i) {
            if (i) os << ' ';
            os << int(s[static_cast<std::size_t>(i)]);
        }
        os << '\n';
    }
}

}  // namespace bhecho
