#include <atomic>
#include <stdexcept>

#include "hyperspec/kernels.hpp"

namespace hyperspec::kernels {

namespace {

bool cpu_supports(Path p) {
    switch (p) {
        case Path::scalar: return true;
        case Path::avx2:
#if defined(HYPERSPEC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Path::neon:
#if defined(HYPERSPEC_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Path widest() {
    if (cpu_supports(Path::avx2)) return Path::avx2;
    if (cpu_supports(Path::neon)) return Path::neon;
    return Path::scalar;
}

std::atomic<Path>& active() {
    static std::atomic<Path> path{widest()};
    return path;
}

}  // namespace

const char* to_string(Path p) noexcept {
    switch (p) {
        case Path::scalar: return "scalar";
        case Path::avx2: return "avx2";
        case Path::neon: return "neon";
    }
    return "unknown";
}

std::vector<Path> available_paths() {
    std::vector<Path> out{Path::scalar};
    for (Path p : {Path::avx2, Path::neon})
        if (cpu_supports(p)) out.push_back(p);
    return out;
}

bool is_available(Path p) { return cpu_supports(p); }

Path active_path() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_path(Path p) {
    if (!cpu_supports(p)) throw std::invalid_argument(std::string("kernel path not available: ") + to_string(p));
    active().store(p, std::memory_order_relaxed);
}

SumOfProductsFn kernel_for(Path p) {
    switch (p) {
#if defined(HYPERSPEC_HAVE_AVX2)
        case Path::avx2: return &sum_of_products_avx2;
#endif
#if defined(HYPERSPEC_HAVE_NEON)
        case Path::neon: return &sum_of_products_neon;
#endif
        default: return &sum_of_products_scalar;
    }
}

double sum_of_products(const std::int32_t* cols, std::size_t stride, std::size_t width, std::size_t begin,
                       std::size_t end, const double* w) {
    return kernel_for(active_path())(cols, stride, width, begin, end, w);
}

}  // namespace hyperspec::kernels
