#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "rsedge/sturm.hpp"

namespace rsedge::kernels {

namespace {

// Four shifts per lane group, same operation order as the scalar kernel
// so the per-lane arithmetic is bitwise identical.
inline void sturm4(const double* diag, const double* off2, std::size_t n, double pivmin,
                   const double* shifts, int* counts) {
    const __m256d x = _mm256_loadu_pd(shifts);
    const __m256d vpiv = _mm256_set1_pd(pivmin);
    const __m256d vnpiv = _mm256_set1_pd(-pivmin);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));

    __m256d q = _mm256_sub_pd(_mm256_set1_pd(diag[0]), x);
    __m256d small = _mm256_cmp_pd(_mm256_and_pd(q, absmask), vpiv, _CMP_LT_OQ);
    __m256d repl = _mm256_blendv_pd(vnpiv, vpiv, _mm256_cmp_pd(q, zero, _CMP_GT_OQ));
    q = _mm256_blendv_pd(q, repl, small);
    __m256i neg = _mm256_sub_epi64(_mm256_setzero_si256(),
                                   _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));

    for (std::size_t i = 1; i < n; ++i) {
        __m256d t = _mm256_div_pd(_mm256_set1_pd(off2[i - 1]), q);
        q = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(diag[i]), x), t);
        small = _mm256_cmp_pd(_mm256_and_pd(q, absmask), vpiv, _CMP_LT_OQ);
        repl = _mm256_blendv_pd(vnpiv, vpiv, _mm256_cmp_pd(q, zero, _CMP_GT_OQ));
        q = _mm256_blendv_pd(q, repl, small);
        neg = _mm256_sub_epi64(neg, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
    }

    alignas(32) long long out[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(out), neg);
    for (int lane = 0; lane < 4; ++lane) counts[lane] = static_cast<int>(out[lane]);
}

} // namespace

void sturm_counts_avx2(const double* diag, const double* off2, std::size_t n, double pivmin,
                       const double* shifts, std::size_t num_shifts, int* counts) {
    std::size_t s = 0;
    for (; s + 4 <= num_shifts; s += 4) sturm4(diag, off2, n, pivmin, shifts + s, counts + s);
    if (s < num_shifts)
        sturm_counts_scalar(diag, off2, n, pivmin, shifts + s, num_shifts - s, counts + s);
}

} // namespace rsedge::kernels

#endif
