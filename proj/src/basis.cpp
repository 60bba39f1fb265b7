#include "bhecho/basis.hpp"

#include <algorithm>

namespace bhecho {

namespace {

std::vector<std::uint64_t> composition_counts(int sites, int total, int cap) {
    // count[s][n]: ways to fill s sites with n particles, each site <= cap
    std::vector<std::uint64_t> count(static_cast<std::size_t>(sites + 1) * (total + 1), 0);
    const auto at = [&](int s, int n) -> std::uint64_t& {
        return count[static_cast<std::size_t>(s) * (total + 1) + n];
    };
    at(0, 0) = 1;
    for (int s = 1; s <= sites; ++s)
        for (int n = 0; n <= total; ++n) {
            std::uint64_t acc = 0;
            for (int v = 0; v <= std::min(cap, n); ++v) acc += at(s - 1, n - v);
            at(s, n) = acc;
        }
    return count;
}

}  // namespace

FockBasis::FockBasis(int sites, int total, int cap) : sites_(sites), total_(total), cap_(cap) {
    if (sites < 1) throw ConfigError("basis: need at least one site");
    if (cap < 0) throw ConfigError("basis: negative local cutoff");
    if (total < 0) throw ConfigError("basis: negative particle number");
    if (static_cast<std::int64_t>(total) > static_cast<std::int64_t>(sites) * cap)
        throw ConfigError("basis: capacity violated, total particles exceed sites * nmax");

    count_ = composition_counts(sites, total, cap);
    dim_ = static_cast<std::size_t>(count(sites, total));
    occ_.resize(dim_ * static_cast<std::size_t>(sites));

    // Enumerate in descending lexicographic order: at each site take the
    // largest admissible occupation first.
    std::vector<std::uint8_t> cur(static_cast<std::size_t>(sites));
    std::size_t row = 0;
    auto emit = [&]() {
        std::copy(cur.begin(), cur.end(), occ_.begin() + row * static_cast<std::size_t>(sites));
        ++row;
    };
    auto rec = [&](auto&& self, int site, int remaining) -> void {
        if (site == sites) {
            emit();
            return;
        }
        const int left = sites - site - 1;
        const int hi = std::min(cap, remaining);
        const int lo = std::max(0, remaining - left * cap);
        for (int v = hi; v >= lo; --v) {
            cur[static_cast<std::size_t>(site)] = static_cast<std::uint8_t>(v);
            self(self, site + 1, remaining - v);
        }
    };
    rec(rec, 0, total);
}

std::size_t FockBasis::index_of(std::span<const std::uint8_t> occupation) const {
    if (occupation.size() != static_cast<std::size_t>(sites_))
        throw ConfigError("basis: occupation vector has wrong length");
    std::size_t rank = 0;
    int remaining = total_;
    for (int s = 0; s < sites_; ++s) {
        const int v = occupation[static_cast<std::size_t>(s)];
        const int left = sites_ - s - 1;
        // states with a larger occupation at this site come first
        for (int w = std::min(cap_, remaining); w > v; --w)
            rank += count(left, remaining - w);
        remaining -= v;
    }
    return rank;
}

std::size_t FockBasis::dimension(int sites, int total, int cap) {
    if (total < 0 || static_cast<std::int64_t>(total) > static_cast<std::int64_t>(sites) * cap) return 0;
    const auto count = composition_counts(sites, total, cap);
    return static_cast<std::size_t>(count[static_cast<std::size_t>(sites) * (total + 1) + total]);
}

FockBasis build_basis(int sites, int total, int cap) { return FockBasis(sites, total, cap); }

}  // namespace bhecho
