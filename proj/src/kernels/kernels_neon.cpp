// AArch64 has no gather instruction; lanes are filled with scalar loads and
// the products and accumulation run two rows at a time.

#include <arm_neon.h>

#include "hyperspec/kernels.hpp"

namespace hyperspec::kernels {

double sum_of_products_neon(const std::int32_t* cols, std::size_t stride, std::size_t width, std::size_t begin,
                            std::size_t end, const double* w) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t r = begin;
    for (; r + 2 <= end; r += 2) {
        float64x2_t prod = vdupq_n_f64(1.0);
        for (std::size_t c = 0; c < width; ++c) {
            const std::int32_t* row = cols + c * stride + r;
            float64x2_t g = vdupq_n_f64(w[row[0]]);
            g = vsetq_lane_f64(w[row[1]], g, 1);
            prod = vmulq_f64(prod, g);
        }
        acc = vaddq_f64(acc, prod);
    }
    double total = vaddvq_f64(acc);
    for (; r < end; ++r) {
        double prod = 1.0;
        for (std::size_t c = 0; c < width; ++c) prod *= w[cols[c * stride + r]];
        total += prod;
    }
    return total;
}

}  // namespace hyperspec::kernels
