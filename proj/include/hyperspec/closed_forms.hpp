#pragma once

// Reference values of lambda_alpha for stars, balanced bipartite 3-graphs and
// Turan graphs, the edge-count upper bound, and the shadow lower bound that
// follows from it via Lovasz's form of Kruskal-Katona.

#include <optional>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

enum class ClosedFormMethod { exact_formula, uniform_weight, one_dim_opt };

const char* to_string(ClosedFormMethod m) noexcept;

struct ClosedFormValue {
    double lambda = 0.0;
    ClosedFormMethod method = ClosedFormMethod::exact_formula;
    /// The maximizing parameter a of the one-dimensional problem.
    std::optional<double> inner_argmax;
};

/// Star S^k_{t,n}: every k-set containing the fixed t-set. The optimum puts
/// alpha-mass a = t/k on the centre.
ClosedFormValue star_lambda(int k, int t, int n, double alpha);

/// k! e(H) n^(-k/alpha), the value at uniform weights. Requires H to be
/// vertex-transitive (Error{not_vertex_uniform} otherwise).
ClosedFormValue uniform_weight_lambda(const Hypergraph& h, double alpha);

/// B_n. Odd n = 2t+1 is reduced to maximizing f(a), a in (-1, 1 + 1/t),
/// with part masses x = (1+a)/n on the t-part and y = (1 - a t/(t+1))/n on the
/// (t+1)-part; then lambda = 3 t (t+1) f(a).
ClosedFormValue bipartite3_lambda(int n, double alpha);
double bipartite3_f(int t, double alpha, double a);
double bipartite3_fprime(int t, double alpha, double a);

/// T_{r,n} with n = qr + s. For s > 0, lambda = max f(a) over
/// a in (-1, q(r-s)/((q+1)s)), with x = (1+a)/n on the (q+1)-parts and
/// y = (1 - a(q+1)s/(q(r-s)))/n on the q-parts.
ClosedFormValue turan_lambda(int r, int n, double alpha);
double turan_f(int r, int n, double alpha, double a);
double turan_fprime(int r, int n, double alpha, double a);
/// Point where the q-parts start to outweigh the (q+1)-parts per vertex by
/// the factor (1+1/q)^alpha; the maximizer lies in [turan_a0, 0].
double turan_a0(int r, int n, double alpha);

/// (k! e)^(1 - 1/alpha), an upper bound on lambda_alpha of any k-graph with
/// e edges. alpha must exceed 1.
double edge_bound(int k, long long e, double alpha);

/// Falling factorial x(x-1)...(x-k+1)/k! for real x.
double real_binomial(double x, int k);

struct KKResult {
    double x = 0.0;
    double shadow_bound = 0.0;
    long long shadow_size = 0;
    bool holds = false;
};

/// Largest real x >= k-1 with (k! C(x,k))^(1-1/alpha) <= lambda, then compares
/// |shadow(H)| against C(x, k-1). Requires alpha > 1 and k >= 2.
KKResult kk_check(const Hypergraph& h, double alpha, double lambda);

}  // namespace hyperspec
