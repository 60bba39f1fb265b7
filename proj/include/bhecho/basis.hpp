#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bhecho/common.hpp"

namespace bhecho {

// Occupation-number basis at fixed particle number and local cutoff,
// enumerated in lexicographically descending order. The index map is
// combinatorial (ranking against a composition-count table), so lookups
// never allocate and the ordering is reproducible.
class FockBasis {
  public:
    FockBasis(int sites, int total, int cap);

    int sites() const { return sites_; }
    int total() const { return total_; }
    int cap() const { return cap_; }
    std::size_t dim() const { return dim_; }

    std::span<const std::uint8_t> state(std::size_t idx) const {
        return {occ_.data() + idx * static_cast<std::size_t>(sites_),
                static_cast<std::size_t>(sites_)};
    }

    // Rank of an occupation vector; the inverse of state().
    std::size_t index_of(std::span<const std::uint8_t> occupation) const;

    // Count of constrained compositions, computed without enumeration.
    static std::size_t dimension(int sites, int total, int cap);

  private:
    int sites_, total_, cap_;
    std::size_t dim_;
    std::vector<std::uint8_t> occ_;               // dim x sites, row-major
    std::vector<std::uint64_t> count_;            // (sites+1) x (total+1) composition counts
    std::uint64_t count(int s, int n) const { return count_[static_cast<std::size_t>(s) * (total_ + 1) + n]; }
};

FockBasis build_basis(int sites, int total, int cap);

}  // namespace bhecho
