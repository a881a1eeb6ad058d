#include "hyperspec/closed_forms.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace hyperspec {

const char* to_string(ClosedFormMethod m) noexcept {
    switch (m) {
        case ClosedFormMethod::exact_formula: return "exact_formula";
        case ClosedFormMethod::uniform_weight: return "uniform_weight";
        case ClosedFormMethod::one_dim_opt: return "one_dim_opt";
    }
    return "exact_formula";
}

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

void require_alpha(double alpha, bool strict) {
    if (!std::isfinite(alpha) || alpha < 1.0 || (strict && alpha == 1.0))
        throw Error(Errc::bad_params, strict ? "alpha must exceed 1" : "alpha must be at least 1");
}

struct Argmax {
    double a;
    double f;
};

// Maximizes a smooth function on the open interval (lo, hi): grid scan, golden
// section on the best cell, then Newton on f' with a differenced f''.
Argmax maximize_1d(const std::function<double(double)>& f, const std::function<double(double)>& fp, double lo,
                   double hi) {
    constexpr int grid = 4000;
    const double width = hi - lo;
    auto at = [&](int i) { return lo + width * (i + 0.5) / grid; };
    int best = 0;
    double fbest = f(at(0));
    for (int i = 1; i < grid; ++i) {
        const double v = f(at(i));
        if (v > fbest) {
            fbest = v;
            best = i;
        }
    }
    double l = best > 0 ? at(best - 1) : lo + width * 1e-12;
    double r = best + 1 < grid ? at(best + 1) : hi - width * 1e-12;

    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = r - phi * (r - l);
    double d = l + phi * (r - l);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && r - l > 1e-13 * std::max(1.0, std::abs(l)); ++it) {
        if (fc > fd) {
            r = d;
            d = c;
            fd = fc;
            c = r - phi * (r - l);
            fc = f(c);
        } else {
            l = c;
            c = d;
            fc = fd;
            d = l + phi * (r - l);
            fd = f(d);
        }
    }
    double a = (l + r) / 2.0;
    const double bl = at(std::max(best - 1, 0)), br = at(std::min(best + 1, grid - 1));
    for (int it = 0; it < 50; ++it) {
        const double g = fp(a);
        if (std::abs(g) <= 1e-13) break;
        const double h = 1e-6 * std::max(1.0, std::abs(a));
        const double curv = (fp(a + h) - fp(a - h)) / (2.0 * h);
        if (!(curv < 0.0)) break;
        const double next = a - g / curv;
        if (!(next > bl && next < br) || !(std::abs(fp(next)) < std::abs(g))) break;
        a = next;
    }
    return {a, f(a)};
}

}  // namespace

ClosedFormValue star_lambda(int k, int t, int n, double alpha) {
    require_alpha(alpha, false);
    if (t < 1 || t > k || k > n) throw Error(Errc::bad_params, "star needs 1 <= t <= k <= n");
    double value = factorial(k) * static_cast<double>(binomial(n - t, k - t)) * std::pow(k, -k / alpha);
    if (k > t) value *= std::pow(static_cast<double>(k - t) / (n - t), (k - t) / alpha);
    return {value, ClosedFormMethod::one_dim_opt, static_cast<double>(t) / k};
}

ClosedFormValue uniform_weight_lambda(const Hypergraph& h, double alpha) {
    require_alpha(alpha, false);
    if (h.order() == 0) throw Error(Errc::bad_params, "hypergraph has no vertices");
    if (!is_vertex_transitive(h)) throw Error(Errc::not_vertex_uniform, "hypergraph is not vertex-transitive");
    const double value = factorial(h.uniformity()) * static_cast<double>(h.size()) *
                         std::pow(static_cast<double>(h.order()), -h.uniformity() / alpha);
    return {value, ClosedFormMethod::uniform_weight, std::nullopt};
}

double bipartite3_f(int t, double alpha, double a) {
    const double n = 2.0 * t + 1.0;
    const double x = (1.0 + a) / n;
    const double y = (1.0 - a * t / (t + 1.0)) / n;
    const double p = 1.0 / alpha;
    return std::pow(x * y, p) * ((t - 1.0) * std::pow(x, p) + t * std::pow(y, p));
}

double bipartite3_fprime(int t, double alpha, double a) {
    const double n = 2.0 * t + 1.0;
    const double x = (1.0 + a) / n;
    const double y = (1.0 - a * t / (t + 1.0)) / n;
    const double dx = 1.0 / n;
    const double dy = -t / ((t + 1.0) * n);
    const double p = 1.0 / alpha;
    // f = (t-1) x^(2p) y^p + t x^p y^(2p)
    return (t - 1.0) * (2.0 * p * std::pow(x, 2.0 * p - 1.0) * std::pow(y, p) * dx +
                        p * std::pow(x, 2.0 * p) * std::pow(y, p - 1.0) * dy) +
           t * (p * std::pow(x, p - 1.0) * std::pow(y, 2.0 * p) * dx +
                2.0 * p * std::pow(x, p) * std::pow(y, 2.0 * p - 1.0) * dy);
}

ClosedFormValue bipartite3_lambda(int n, double alpha) {
    require_alpha(alpha, true);
    if (n < 3) throw Error(Errc::bad_params, "B_n needs n >= 3");
    if (n % 2 == 0) {
        const double e = static_cast<double>(binomial(n, 3) - 2 * binomial(n / 2, 3));
        return {6.0 * e * std::pow(static_cast<double>(n), -3.0 / alpha), ClosedFormMethod::uniform_weight, std::nullopt};
    }
    const int t = (n - 1) / 2;
    const auto opt = maximize_1d([&](double a) { return bipartite3_f(t, alpha, a); },
                                 [&](double a) { return bipartite3_fprime(t, alpha, a); }, -1.0, 1.0 + 1.0 / t);
    return {3.0 * t * (t + 1.0) * opt.f, ClosedFormMethod::one_dim_opt, opt.a};
}

namespace {

struct TuranShape {
    double q, s, r, n;
};

TuranShape turan_shape(int r, int n) { return {static_cast<double>(n / r), static_cast<double>(n % r), double(r), double(n)}; }

}  // namespace

double turan_f(int r, int n, double alpha, double a) {
    const auto [q, s, rr, nn] = turan_shape(r, n);
    const double x = (1.0 + a) / nn;
    const double y = (1.0 - a * (q + 1.0) * s / (q * (rr - s))) / nn;
    const double p = 1.0 / alpha;
    return (q + 1.0) * (q + 1.0) * s * (s - 1.0) * std::pow(x, 2.0 * p) +
           q * q * (rr - s) * (rr - s - 1.0) * std::pow(y, 2.0 * p) +
           2.0 * q * (q + 1.0) * s * (rr - s) * std::pow(x * y, p);
}

double turan_fprime(int r, int n, double alpha, double a) {
    const auto [q, s, rr, nn] = turan_shape(r, n);
    const double x = (1.0 + a) / nn;
    const double y = (1.0 - a * (q + 1.0) * s / (q * (rr - s))) / nn;
    const double dx = 1.0 / nn;
    const double dy = -(q + 1.0) * s / (q * (rr - s)) / nn;
    const double p = 1.0 / alpha;
    const double P = (q + 1.0) * (q + 1.0) * s * (s - 1.0);
    const double Q = q * q * (rr - s) * (rr - s - 1.0);
    const double R = 2.0 * q * (q + 1.0) * s * (rr - s);
    return P * 2.0 * p * std::pow(x, 2.0 * p - 1.0) * dx + Q * 2.0 * p * std::pow(y, 2.0 * p - 1.0) * dy +
           R * p * (std::pow(x, p - 1.0) * std::pow(y, p) * dx + std::pow(x, p) * std::pow(y, p - 1.0) * dy);
}

double turan_a0(int r, int n, double alpha) {
    const auto [q, s, rr, nn] = turan_shape(r, n);
    (void)nn;
    if (s == 0.0) return 0.0;
    const double g = std::pow(1.0 + 1.0 / q, alpha);
    return -(rr - s) * q * (g - 1.0) / (s * (q + 1.0) + (rr - s) * q * g);
}

ClosedFormValue turan_lambda(int r, int n, double alpha) {
    require_alpha(alpha, true);
    if (r < 2 || n < r) throw Error(Errc::bad_params, "T_{r,n} needs r >= 2 and n >= r");
    const int q = n / r;
    const int s = n % r;
    if (s == 0) {
        const double e = static_cast<double>(q) * q * static_cast<double>(binomial(r, 2));
        return {2.0 * e * std::pow(static_cast<double>(n), -2.0 / alpha), ClosedFormMethod::uniform_weight,
                std::nullopt};
    }
    const double hi = static_cast<double>(q) * (r - s) / ((q + 1.0) * s);
    const auto opt = maximize_1d([&](double a) { return turan_f(r, n, alpha, a); },
                                 [&](double a) { return turan_fprime(r, n, alpha, a); }, -1.0, hi);
    return {opt.f, ClosedFormMethod::one_dim_opt, opt.a};
}

double edge_bound(int k, long long e, double alpha) {
    require_alpha(alpha, true);
    if (k < 1 || e < 0) throw Error(Errc::bad_params, "edge_bound needs k >= 1 and e >= 0");
    return std::pow(factorial(k) * static_cast<double>(e), 1.0 - 1.0 / alpha);
}

double real_binomial(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= (x - i) / (i + 1);
    return v;
}

KKResult kk_check(const Hypergraph& h, double alpha, double lambda) {
    require_alpha(alpha, true);
    const int k = h.uniformity();
    if (k < 2) throw Error(Errc::bad_params, "kk_check needs k >= 2");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(Errc::bad_params, "lambda must be finite and >= 0");

    const double kf = factorial(k);
    auto bound_at = [&](double x) { return std::pow(kf * std::max(real_binomial(x, k), 0.0), 1.0 - 1.0 / alpha); };
    double lo = k - 1.0;
    double hi = static_cast<double>(h.order() + k);
    while (bound_at(hi) <= lambda) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = (lo + hi) / 2.0;
        if (bound_at(mid) <= lambda)
            lo = mid;
        else
            hi = mid;
    }
    KKResult out;
    out.x = lo;
    out.shadow_bound = real_binomial(lo, k - 1);
    out.shadow_size = static_cast<long long>(shadow(h).size());
    out.holds = static_cast<double>(out.shadow_size) >= out.shadow_bound - 1e-9;
    return out;
}

}  // namespace hyperspec
