#pragma once

// Internal kernel entry points, one set per backend. Only the dispatcher
// includes this header.

#include <cstddef>
#include <cstdint>

#include "bhecho/common.hpp"
#include "bhecho/kernels.hpp"

namespace bhecho::kernels::detail {

ModeSums mode_sums_scalar(const double* c1, const double* c2, const double* w, std::size_t n, double t);
void sincos_array_scalar(const double* x, double* s, double* c, std::size_t n);
void csr_apply_scalar(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                      const double* val, const cplx* x, cplx* y);

#if defined(BHECHO_HAVE_AVX2)
ModeSums mode_sums_avx2(const double* c1, const double* c2, const double* w, std::size_t n, double t);
void sincos_array_avx2(const double* x, double* s, double* c, std::size_t n);
void csr_apply_avx2(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                    const double* val, const cplx* x, cplx* y);
#endif

}  // namespace bhecho::kernels::detail
