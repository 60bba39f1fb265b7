#include <cmath>

#include "kernels_impl.hpp"

namespace bhecho::kernels::detail {

ModeSums mode_sums_scalar(const double* c1, const double* c2, const double* w,
                          std::size_t n, double t) {
    double rate = 0.0, decay = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double arg = w[i] * t;
        rate += c1[i] * std::sin(arg);
        decay += c2[i] * (1.0 - std::cos(arg));
    }
    return {rate, decay};
}

void sincos_array_scalar(const double* x, double* s, double* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void csr_apply_scalar(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                      const double* val, const cplx* x, cplx* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        double re = 0.0, im = 0.0;
        for (std::int64_t k = rowptr[r]; k < rowptr[r + 1]; ++k) {
            const cplx& xv = x[col[k]];
            re += val[k] * xv.real();
            im += val[k] * xv.imag();
        }
        y[r] = {re, im};
    }
}

}  // namespace bhecho::kernels::detail
