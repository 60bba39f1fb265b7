#pragma once

#include <cstddef>
#include <cstdint>

#include "bhecho/common.hpp"

namespace bhecho::kernels {

// Data-parallel inner loops used by the quasiparticle mode sums and the
// sparse propagator. Each operation has a scalar reference implementation
// and an AVX2 variant; the backend is selected at runtime (CPU detection,
// overridable via set_backend or the BHECHO_KERNELS environment variable)
// and every variant is equivalence-tested against the scalar reference.
enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_supported(Backend b);
Backend active_backend();
void set_backend(Backend b);   // throws GuardError if unsupported on this CPU/build
void reset_backend();          // back to auto-detection

struct ModeSums {
    double rate;   // sum_i c1[i] * sin(w[i] * t)
    double decay;  // sum_i c2[i] * (1 - cos(w[i] * t))
};

// One fused pass over the mode arrays; both sums share the trig evaluation.
ModeSums mode_sums(const double* c1, const double* c2, const double* w, std::size_t n, double t);

// Elementwise sine/cosine. |x| up to ~1e8 is supported by the reduced
// argument range; all uses here stay far below that.
void sincos_array(const double* x, double* s, double* c, std::size_t n);

// y = A x with A real CSR and x, y complex (interleaved re/im).
void csr_apply(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
               const double* val, const cplx* x, cplx* y);

}  // namespace bhecho::kernels
