#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bhecho/csr.hpp"
#include "bhecho/kernels.hpp"

using namespace bhecho;
namespace k = bhecho::kernels;

namespace {

struct BackendGuard {
    ~BackendGuard() { k::reset_backend(); }
};

std::vector<double> random_vec(std::size_t n, double lo, double hi, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

CsrMatrix random_symmetric_csr(std::size_t n, double density, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::vector<std::pair<std::int32_t, double>>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (i == j || coin(rng) < density) {
                const double v = val(rng);
                rows[i].push_back({static_cast<std::int32_t>(j), v});
                if (i != j) rows[j].push_back({static_cast<std::int32_t>(i), v});
            }
    CsrMatrix m;
    m.rows = n;
    m.rowptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(rows[i].begin(), rows[i].end());
        for (auto [c, v] : rows[i]) {
            m.col.push_back(c);
            m.val.push_back(v);
        }
        m.rowptr[i + 1] = static_cast<std::int64_t>(m.col.size());
    }
    return m;
}

}  // namespace

TEST_CASE("scalar backend is always available and selectable") {
    BackendGuard g;
    CHECK(k::backend_supported(k::Backend::scalar));
    k::set_backend(k::Backend::scalar);
    CHECK(k::active_backend() == k::Backend::scalar);
}

TEST_CASE("sincos matches libm across the supported argument range") {
    BackendGuard g;
    if (!k::backend_supported(k::Backend::avx2)) return;  // nothing to compare on this machine
    k::set_backend(k::Backend::avx2);

    std::vector<double> xs;
    for (double range : {0.5, 20.0, 1e4, 1e6}) {
        auto r = random_vec(4099, -range, range, 42);
        xs.insert(xs.end(), r.begin(), r.end());
    }
    const double pi = std::acos(-1.0);
    for (int m = -8; m <= 8; ++m) xs.push_back(0.5 * pi * m);
    xs.push_back(0.0);

    std::vector<double> s(xs.size()), c(xs.size());
    k::sincos_array(xs.data(), s.data(), c.data(), xs.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        worst = std::max(worst, std::abs(s[i] - std::sin(xs[i])));
        worst = std::max(worst, std::abs(c[i] - std::cos(xs[i])));
        CHECK(std::abs(s[i] * s[i] + c[i] * c[i] - 1.0) < 8e-16);
    }
    CHECK(worst < 5e-14);
}

TEST_CASE("mode_sums: AVX2 agrees with the scalar reference") {
    BackendGuard g;
    if (!k::backend_supported(k::Backend::avx2)) return;

    for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 5ul, 17ul, 1000ul, 4097ul}) {
        const auto c1 = random_vec(n, -1.0, 1.0, 1);
        const auto c2 = random_vec(n, 0.0, 1.0, 2);
        const auto w = random_vec(n, 0.1, 40.0, 3);
        for (double t : {0.0, 0.37, 5.0, 61.2}) {
            k::set_backend(k::Backend::scalar);
            const auto ref = k::mode_sums(c1.data(), c2.data(), w.data(), n, t);
            k::set_backend(k::Backend::avx2);
            const auto simd = k::mode_sums(c1.data(), c2.data(), w.data(), n, t);
            const double scale = std::max(1.0, double(n));
            CHECK(std::abs(ref.rate - simd.rate) < 1e-13 * scale);
            CHECK(std::abs(ref.decay - simd.decay) < 1e-13 * scale);
        }
    }
}

TEST_CASE("csr_apply: AVX2 agrees with the scalar reference") {
    BackendGuard g;
    if (!k::backend_supported(k::Backend::avx2)) return;

    const auto m = random_symmetric_csr(257, 0.07, 7);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> x(m.rows);
    for (auto& v : x) v = {dist(rng), dist(rng)};

    std::vector<cplx> y_ref(m.rows), y_simd(m.rows);
    k::set_backend(k::Backend::scalar);
    m.apply(x.data(), y_ref.data());
    k::set_backend(k::Backend::avx2);
    m.apply(x.data(), y_simd.data());
    for (std::size_t i = 0; i < m.rows; ++i)
        CHECK(std::abs(y_ref[i] - y_simd[i]) < 1e-13 * (1.0 + std::abs(y_ref[i])));
}

TEST_CASE("mode sums have the expected closed forms on single modes") {
    BackendGuard g;
    const double c1 = 0.7, c2 = 0.3, w = 2.5;
    for (auto b : {k::Backend::scalar, k::Backend::avx2}) {
        if (!k::backend_supported(b)) continue;
        k::set_backend(b);
        for (double t : {0.0, 0.9, 3.3}) {
            const auto s = k::mode_sums(&c1, &c2, &w, 1, t);
            CHECK(s.rate == doctest::Approx(c1 * std::sin(w * t)).epsilon(1e-12));
            CHECK(s.decay == doctest::Approx(c2 * (1.0 - std::cos(w * t))).epsilon(1e-12));
        }
    }
}

TEST_CASE("unsupported backend request is a guard error") {
    BackendGuard g;
    if (k::backend_supported(k::Backend::avx2)) return;
    CHECK_THROWS_AS(k::set_backend(k::Backend::avx2), GuardError);
}
