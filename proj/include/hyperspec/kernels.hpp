#pragma once

// Inner loop shared by every evaluation of the adjacency form: for each row of
// an index table, multiply the gathered weights w[idx] across the row's
// columns, then sum the row products.
//
// The table is column-major: entry (row r, column c) lives at
// cols[c * stride + r]. A table with zero columns contributes 1 per row.
//
// A scalar reference kernel is always built. Vectorized variants (AVX2 gather
// on x86-64, NEON on AArch64) are compiled when the target supports them and
// chosen at runtime. Row products are formed in the same column order in all
// variants, so they agree bit for bit; only the order of the final summation
// differs.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hyperspec::kernels {

enum class Path { scalar, avx2, neon };

const char* to_string(Path p) noexcept;

using SumOfProductsFn = double (*)(const std::int32_t* cols, std::size_t stride, std::size_t width,
                                   std::size_t begin, std::size_t end, const double* w);

double sum_of_products_scalar(const std::int32_t* cols, std::size_t stride, std::size_t width, std::size_t begin,
                              std::size_t end, const double* w);
#if defined(HYPERSPEC_HAVE_AVX2)
double sum_of_products_avx2(const std::int32_t* cols, std::size_t stride, std::size_t width, std::size_t begin,
                            std::size_t end, const double* w);
#endif
#if defined(HYPERSPEC_HAVE_NEON)
double sum_of_products_neon(const std::int32_t* cols, std::size_t stride, std::size_t width, std::size_t begin,
                            std::size_t end, const double* w);
#endif

/// Paths compiled in and supported by this CPU; scalar is always first.
std::vector<Path> available_paths();
bool is_available(Path p);

/// Path used by sum_of_products(). Defaults to the widest available one.
Path active_path() noexcept;
/// Throws std::invalid_argument when `p` is not available.
void set_active_path(Path p);

SumOfProductsFn kernel_for(Path p);

double sum_of_products(const std::int32_t* cols, std::size_t stride, std::size_t width, std::size_t begin,
                       std::size_t end, const double* w);

}  // namespace hyperspec::kernels
