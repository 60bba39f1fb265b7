// AVX2 variants. Compiled with -mavx2 -mfma; reached only through the
// runtime dispatcher after a CPU capability check.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace bhecho::kernels::detail {

namespace {

// Four-lane sine/cosine. Cody-Waite reduction modulo pi/2 (three-term
// split, exact products for |quotient| < 2^21) followed by Cephes minimax
// polynomials on |r| <= pi/4. Validated against libm in the kernel
// equivalence suite.
inline void sincos4(__m256d x, __m256d* s_out, __m256d* c_out) {
    const __m256d two_over_pi = _mm256_set1_pd(0.636619772367581343075535); // 2/pi
    const __m256d pio2_1 = _mm256_set1_pd(1.57079632673412561417e+00);
    const __m256d pio2_2 = _mm256_set1_pd(6.07710050630396597660e-11);
    const __m256d pio2_3 = _mm256_set1_pd(2.02226624871116645580e-21);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, two_over_pi),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, pio2_1, x);
    r = _mm256_fnmadd_pd(n, pio2_2, r);
    r = _mm256_fnmadd_pd(n, pio2_3, r);

    const __m256d z = _mm256_mul_pd(r, r);

    // sin(r) = r + r z P(z)
    __m256d p = _mm256_set1_pd(1.58962301576546568060e-10);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-2.50507477628578072866e-8));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(2.75573136213857245213e-6));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.98412698295895385996e-4));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(8.33333333332211858878e-3));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(-1.66666666666666307295e-1));
    const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(r, z), p, r);

    // cos(r) = 1 - z/2 + z^2 Q(z)
    __m256d q = _mm256_set1_pd(-1.13585365213876817300e-11);
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.08757008419747316778e-9));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(-2.75573141792967388112e-7));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.48015872888517179954e-5));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(-1.38888888888730564116e-3));
    q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(4.16666666666665929218e-2));
    __m256d cos_r = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0));
    cos_r = _mm256_fmadd_pd(_mm256_mul_pd(z, z), q, cos_r);

    // Quadrant fixup from n mod 4 (two's complement AND handles n < 0).
    const __m128i qi = _mm256_cvtpd_epi32(n);
    const __m128i one = _mm_set1_epi32(1);
    const __m128i two = _mm_set1_epi32(2);
    const __m128i swap32 = _mm_cmpeq_epi32(_mm_and_si128(qi, one), one);
    const __m128i sneg32 = _mm_cmpeq_epi32(_mm_and_si128(qi, two), two);
    const __m128i cneg32 =
        _mm_cmpeq_epi32(_mm_and_si128(_mm_add_epi32(qi, one), two), two);
    const __m256d swap = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(swap32));
    const __m256d sneg = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(sneg32));
    const __m256d cneg = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(cneg32));

    const __m256d signbit = _mm256_set1_pd(-0.0);
    __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap);
    __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(sneg, signbit));
    c = _mm256_xor_pd(c, _mm256_and_pd(cneg, signbit));
    *s_out = s;
    *c_out = c;
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d sum2 = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(sum2, _mm_unpackhi_pd(sum2, sum2)));
}

}  // namespace

ModeSums mode_sums_avx2(const double* c1, const double* c2, const double* w,
                        std::size_t n, double t) {
    const __m256d tv = _mm256_set1_pd(t);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d rate = _mm256_setzero_pd();
    __m256d decay = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d arg = _mm256_mul_pd(_mm256_loadu_pd(w + i), tv);
        __m256d s, c;
        sincos4(arg, &s, &c);
        rate = _mm256_fmadd_pd(_mm256_loadu_pd(c1 + i), s, rate);
        decay = _mm256_fmadd_pd(_mm256_loadu_pd(c2 + i), _mm256_sub_pd(one, c), decay);
    }
    double rate_s = hsum(rate), decay_s = hsum(decay);
    for (; i < n; ++i) {
        const double arg = w[i] * t;
        rate_s += c1[i] * std::sin(arg);
        decay_s += c2[i] * (1.0 - std::cos(arg));
    }
    return {rate_s, decay_s};
}

void sincos_array_avx2(const double* x, double* s, double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sv, cv;
        sincos4(_mm256_loadu_pd(x + i), &sv, &cv);
        _mm256_storeu_pd(s + i, sv);
        _mm256_storeu_pd(c + i, cv);
    }
    for (; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void csr_apply_avx2(std::size_t rows, const std::int64_t* rowptr, const std::int32_t* col,
                    const double* val, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    for (std::size_t r = 0; r < rows; ++r) {
        __m256d acc = _mm256_setzero_pd();
        std::int64_t k = rowptr[r];
        const std::int64_t end = rowptr[r + 1];
        for (; k + 2 <= end; k += 2) {
            const __m128d x0 = _mm_loadu_pd(xd + 2 * static_cast<std::size_t>(col[k]));
            const __m128d x1 = _mm_loadu_pd(xd + 2 * static_cast<std::size_t>(col[k + 1]));
            const __m256d xx = _mm256_set_m128d(x1, x0);
            const __m256d vv = _mm256_set_m128d(_mm_set1_pd(val[k + 1]), _mm_set1_pd(val[k]));
            acc = _mm256_fmadd_pd(vv, xx, acc);
        }
        __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
        if (k < end) {
            const __m128d xk = _mm_loadu_pd(xd + 2 * static_cast<std::size_t>(col[k]));
            sum = _mm_fmadd_pd(_mm_set1_pd(val[k]), xk, sum);
        }
        _mm_storeu_pd(reinterpret_cast<double*>(y + r), sum);
    }
}

}  // namespace bhecho::kernels::detail
