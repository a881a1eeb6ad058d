#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace hyperspec::detail {

// x^p for x >= 0, via exp/log with the base clamped away from zero. 0^p is 0
// for p > 0 and 1 for p = 0.
inline double safe_pow(double x, double p) {
    if (p == 0.0) return 1.0;
    if (p == 1.0) return x;
    if (x <= 0.0) return 0.0;
    return std::exp(p * std::log(std::max(x, 1e-300)));
}

inline void scale_to_unit(std::span<double> v, double alpha) {
    double mass = 0.0;
    for (double x : v) mass += safe_pow(x, alpha);
    if (mass <= 0.0) return;
    const double s = safe_pow(mass, -1.0 / alpha);
    for (double& x : v) x *= s;
}

}  // namespace hyperspec::detail
