// AVX2 variants of the hot loops.  This translation unit is the only one
// compiled with -mavx2; the dispatcher never calls in here unless the CPU
// reports AVX2 support.  No FMA is used, so per-element rounding matches
// the scalar kernels and differences come only from summation order.

#include "amc/kernels.hpp"

#if defined(AMC_HAVE_AVX2)

#include <immintrin.h>

namespace amc::kernels {

MomentSums moment_sums_avx2(const std::complex<double>* y, std::size_t n) {
    const auto* p = reinterpret_cast<const double*>(y);
    const std::size_t pairs = n / 2;

    __m256d acc_y2 = _mm256_setzero_pd();   // [y2_re, y2_im, y2_re, y2_im]
    __m256d acc_a2 = _mm256_setzero_pd();   // each |y|^2 counted twice
    __m256d acc_a4 = _mm256_setzero_pd();
    __m256d acc_a6 = _mm256_setzero_pd();
    __m256d acc_a2y2 = _mm256_setzero_pd(); // [re, im, re, im]

    for (std::size_t i = 0; i < pairs; ++i) {
        // v = [re0, im0, re1, im1] for two consecutive complex samples
        const __m256d v = _mm256_loadu_pd(p + 4 * i);
        const __m256d t = _mm256_mul_pd(v, v);            // [re^2, im^2, ...]
        const __m256d sw = _mm256_permute_pd(t, 0b0101);  // [im^2, re^2, ...]
        const __m256d a2d = _mm256_add_pd(t, sw);         // |y|^2 in both lanes
        const __m256d diff = _mm256_sub_pd(t, sw);        // re^2-im^2 in even lanes
        const __m256d prod = _mm256_mul_pd(v, _mm256_permute_pd(v, 0b0101)); // re*im
        // y^2 = [re^2-im^2, 2*re*im] interleaved
        const __m256d y2 = _mm256_blend_pd(diff, _mm256_add_pd(prod, prod), 0b1010);
        const __m256d a4d = _mm256_mul_pd(a2d, a2d);
        acc_y2 = _mm256_add_pd(acc_y2, y2);
        acc_a2 = _mm256_add_pd(acc_a2, a2d);
        acc_a4 = _mm256_add_pd(acc_a4, a4d);
        acc_a6 = _mm256_add_pd(acc_a6, _mm256_mul_pd(a4d, a2d));
        acc_a2y2 = _mm256_add_pd(acc_a2y2, _mm256_mul_pd(a2d, y2));
    }

    // Fixed lane-combination order keeps repeated runs bit-identical.
    alignas(32) double y2l[4], a2l[4], a4l[4], a6l[4], xl[4];
    _mm256_store_pd(y2l, acc_y2);
    _mm256_store_pd(a2l, acc_a2);
    _mm256_store_pd(a4l, acc_a4);
    _mm256_store_pd(a6l, acc_a6);
    _mm256_store_pd(xl, acc_a2y2);

    MomentSums s;
    s.y2_re = y2l[0] + y2l[2];
    s.y2_im = y2l[1] + y2l[3];
    s.a2 = (a2l[0] + a2l[1] + a2l[2] + a2l[3]) * 0.5;
    s.a4 = (a4l[0] + a4l[1] + a4l[2] + a4l[3]) * 0.5;
    s.a6 = (a6l[0] + a6l[1] + a6l[2] + a6l[3]) * 0.5;
    s.a2y2_re = xl[0] + xl[2];
    s.a2y2_im = xl[1] + xl[3];

    if (n % 2) s += moment_sums_scalar(y + 2 * pairs, 1);
    return s;
}

void scaled_add_avx2(std::complex<double>* dst, const std::complex<double>* x,
                     double a, std::size_t n) {
    auto* d = reinterpret_cast<double*>(dst);
    const auto* s = reinterpret_cast<const double*>(x);
    const std::size_t total = 2 * n;
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= total; i += 4) {
        const __m256d acc =
            _mm256_add_pd(_mm256_loadu_pd(d + i),
                          _mm256_mul_pd(av, _mm256_loadu_pd(s + i)));
        _mm256_storeu_pd(d + i, acc);
    }
    for (; i < total; ++i) d[i] += a * s[i];
}

} // namespace amc::kernels

#endif // AMC_HAVE_AVX2
