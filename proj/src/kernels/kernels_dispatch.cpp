#include <atomic>
#include <cstdlib>
#include <cstring>
#include <iostream>

#include "bhecho/csr.hpp"
#include "kernels_impl.hpp"

namespace bhecho::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(BHECHO_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend detect() {
    if (const char* env = std::getenv("BHECHO_KERNELS"); env && *env) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (cpu_has_avx2()) return Backend::avx2;
            std::cerr << "bhecho: BHECHO_KERNELS=avx2 requested but unavailable, using scalar\n";
            return Backend::scalar;
        }
        if (std::strcmp(env, "auto") != 0)
            std::cerr << "bhecho: ignoring unknown BHECHO_KERNELS='" << env << "'\n";
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend> g_backend{detect()};

}  // namespace

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_supported(Backend b) {
    return b == Backend::scalar || cpu_has_avx2();
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw GuardError(std::string("kernel backend '") + backend_name(b) +
                         "' is not supported on this machine/build");
    g_backend.store(b, std::memory_order_relaxed);
}

void reset_backend() { g_backend.store(detect(), std::memory_order_relaxed); }

ModeSums mode_sums(const double* c1, const double* c2, const double* w, std::size_t n, double t) {
#if defined(BHECHO_HAVE_AVX2)
    if (active_backend() == Backend::avx2) return detail::mode_sums_avx2(c1, c2, w, n, t);
#endif
    return detail::mode_sums_scalar(c1, c2, w, n, t);
}

void sincos_array(const double* x, double* s, double* c, std::size_t n) {
#if defined(BHECHO_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        detail::sincos_array_avx2(x, s, c, n);
        return;
    }
#endif
    detail::sincos_array_scalar(x, s, c, n);
}

void csr_apply(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
               const double* val, const cplx* x, cplx* y) {
#if defined(BHECHO_HAVE_AVX2)
    if (active_backend() == Backend::avx2) {
        detail::csr_apply_avx2(rows, rowptr, col, val, x, y);
        return;
    }
#endif
    detail::csr_apply_scalar(rows, rowptr, col, val, x, y);
}

}  // namespace bhecho::kernels

namespace bhecho {

void CsrMatrix::apply(const cplx* x, cplx* y) const {
    kernels::csr_apply(rows, rowptr.data(), col.data(), val.data(), x, y);
}

void CsrMatrix::apply(const std::vector<cplx>& x, std::vector<cplx>& y) const {
    y.resize(rows);
    apply(x.data(), y.data());
}

void CsrMatrix::apply_real(const double* x, double* y) const {
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k)
            acc += val[static_cast<std::size_t>(k)] * x[col[static_cast<std::size_t>(k)]];
        y[r] = acc;
    }
}

double CsrMatrix::gershgorin_bound() const {
    double bound = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k)
            acc += std::abs(val[static_cast<std::size_t>(k)]);
        bound = std::max(bound, acc);
    }
    return bound;
}

}  // namespace bhecho
