#include "hyperspec/kernels.hpp"

namespace hyperspec::kernels {

double sum_of_products_scalar(const std::int32_t* cols, std::size_t stride, std::size_t width, std::size_t begin,
                              std::size_t end, const double* w) {
    double total = 0.0;
    for (std::size_t r = begin; r < end; ++r) {
        double prod = 1.0;
        for (std::size_t c = 0; c < width; ++c) prod *= w[cols[c * stride + r]];
        total += prod;
    }
    return total;
}

}  // namespace hyperspec::kernels
