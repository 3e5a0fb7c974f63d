// AVX2+FMA variants of the point-evaluation kernels. Compiled with
// -mavx2 -mfma in its own translation unit; callers must gate on the
// runtime CPU check in the dispatcher.

#include <cstddef>

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace gdop::kernels::detail {

void horner_many_avx2(const double* cre, const double* cim, std::size_t m, const double* zre,
                      const double* zim, std::size_t npts, double* wre, double* wim) {
    if (m == 0) {
        for (std::size_t i = 0; i < npts; ++i) {
            wre[i] = 0.0;
            wim[i] = 0.0;
        }
        return;
    }
    std::size_t i = 0;
    for (; i + 4 <= npts; i += 4) {
        const __m256d zr = _mm256_loadu_pd(zre + i);
        const __m256d zi = _mm256_loadu_pd(zim + i);
        __m256d ar = _mm256_set1_pd(cre[m - 1]);
        __m256d ai = _mm256_set1_pd(cim[m - 1]);
        for (std::size_t j = m - 1; j-- > 0;) {
            // (ar + i ai) * (zr + i zi) + c_j
            const __m256d cr = _mm256_set1_pd(cre[j]);
            const __m256d ci = _mm256_set1_pd(cim[j]);
            const __m256d nr = _mm256_fmadd_pd(ar, zr, _mm256_fnmadd_pd(ai, zi, cr));
            const __m256d ni = _mm256_fmadd_pd(ar, zi, _mm256_fmadd_pd(ai, zr, ci));
            ar = nr;
            ai = ni;
        }
        _mm256_storeu_pd(wre + i, ar);
        _mm256_storeu_pd(wim + i, ai);
    }
    // scalar tail
    for (; i < npts; ++i) {
        const double zr = zre[i], zi = zim[i];
        double ar = cre[m - 1], ai = cim[m - 1];
        for (std::size_t j = m - 1; j-- > 0;) {
            const double nr = ar * zr - ai * zi + cre[j];
            const double ni = ar * zi + ai * zr + cim[j];
            ar = nr;
            ai = ni;
        }
        wre[i] = ar;
        wim[i] = ai;
    }
}

double max_abs_avx2(const double* re, const double* im, std::size_t n) {
    __m256d best = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d s = _mm256_loadu_pd(im + i);
        const __m256d m2 = _mm256_fmadd_pd(r, r, _mm256_mul_pd(s, s));
        best = _mm256_max_pd(best, m2);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double b = lanes[0];
    for (int k = 1; k < 4; ++k)
        if (lanes[k] > b) b = lanes[k];
    for (; i < n; ++i) {
        const double m2 = re[i] * re[i] + im[i] * im[i];
        if (m2 > b) b = m2;
    }
    return std::sqrt(b);
}

}  // namespace gdop::kernels::detail

#endif  // __AVX2__
