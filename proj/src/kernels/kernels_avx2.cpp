// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "hyperspec/kernels.hpp"

namespace hyperspec::kernels {

double sum_of_products_avx2(const std::int32_t* cols, std::size_t stride, std::size_t width, std::size_t begin,
                            std::size_t end, const double* w) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t r = begin;
    for (; r + 4 <= end; r += 4) {
        __m256d prod = _mm256_set1_pd(1.0);
        for (std::size_t c = 0; c < width; ++c) {
            const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + c * stride + r));
            prod = _mm256_mul_pd(prod, _mm256_i32gather_pd(w, idx, 8));
        }
        acc = _mm256_add_pd(acc, prod);
    }
    const __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    double total = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));

    for (; r < end; ++r) {
        double prod = 1.0;
        for (std::size_t c = 0; c < width; ++c) prod *= w[cols[c * stride + r]];
        total += prod;
    }
    return total;
}

}  // namespace hyperspec::kernels
