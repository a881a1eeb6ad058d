#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperspec/closed_forms.hpp"
#include "hyperspec/spectral.hpp"
#include "support.hpp"

using namespace hyperspec;

namespace {

double solved(const Hypergraph& h, double alpha) {
    SolverConfig cfg;
    cfg.alpha = alpha;
    return solve(h, cfg).lambda;
}

}  // namespace

TEST_CASE("star values") {
    CHECK(star_lambda(2, 1, 4, 2.0).lambda == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(star_lambda(2, 1, 4, 2.0).inner_argmax.value() == doctest::Approx(0.5));
    for (int t = 1; t <= 3; ++t)
        for (int n = 3; n <= 7; ++n)
            for (double alpha : {1.0, 1.5, 2.0, 4.0})
                CHECK(star_lambda(3, t, n, alpha).lambda == doctest::Approx(solved(star(3, t, n), alpha)).epsilon(1e-8));
    CHECK_THROWS_AS(star_lambda(2, 3, 4, 2.0), Error);
}

TEST_CASE("uniform weight value needs vertex transitivity") {
    const auto v = uniform_weight_lambda(turan_graph(2, 4), 2.0);
    CHECK(v.lambda == doctest::Approx(2.0));
    CHECK(v.method == ClosedFormMethod::uniform_weight);
    CHECK(uniform_weight_lambda(fano(), 3.0).lambda == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_THROWS_AS(uniform_weight_lambda(star(2, 1, 4), 2.0), Error);
}

TEST_CASE("bipartite and Turan closed forms match the solver") {
    for (double alpha : {1.5, 2.0, 3.0}) {
        for (int n = 3; n <= 8; ++n) {
            CAPTURE(n);
            CAPTURE(alpha);
            CHECK(bipartite3_lambda(n, alpha).lambda == doctest::Approx(solved(balanced_bipartite3(n), alpha)).epsilon(1e-8));
            CHECK(turan_lambda(2, n, alpha).lambda == doctest::Approx(solved(turan_graph(2, n), alpha)).epsilon(1e-8));
            CHECK(turan_lambda(3, n, alpha).lambda == doctest::Approx(solved(turan_graph(3, n), alpha)).epsilon(1e-8));
        }
    }
    CHECK(turan_lambda(2, 4, 2.0).method == ClosedFormMethod::uniform_weight);
    CHECK(turan_lambda(2, 5, 2.0).method == ClosedFormMethod::one_dim_opt);
    CHECK_THROWS_AS(turan_lambda(2, 5, 1.0), Error);
    CHECK_THROWS_AS(bipartite3_lambda(5, 1.0), Error);
}

TEST_CASE("inner maximizers are stationary and bracketed") {
    for (double alpha : {1.5, 2.0, 3.0, 5.0}) {
        for (int n : {5, 7, 11, 21}) {
            const auto b = bipartite3_lambda(n, alpha);
            REQUIRE(b.inner_argmax);
            CHECK(std::abs(bipartite3_fprime(n / 2, alpha, *b.inner_argmax)) < 1e-8);
            CHECK(3.0 * (n / 2) * (n / 2 + 1) * bipartite3_f(n / 2, alpha, *b.inner_argmax) == doctest::Approx(b.lambda));
            for (int r : {2, 3}) {
                if (n % r == 0) continue;
                const auto t = turan_lambda(r, n, alpha);
                REQUIRE(t.inner_argmax);
                CHECK(*t.inner_argmax <= 1e-12);
                CHECK(*t.inner_argmax >= turan_a0(r, n, alpha) - 1e-12);
                CHECK(std::abs(turan_fprime(r, n, alpha, *t.inner_argmax)) < 1e-8);
                CHECK(turan_f(r, n, alpha, *t.inner_argmax) == doctest::Approx(t.lambda));
            }
        }
    }
}

TEST_CASE("edge bound") {
    CHECK(edge_bound(2, 3, 2.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
    CHECK(edge_bound(3, 0, 2.0) == 0.0);
    CHECK_THROWS_AS(edge_bound(2, 3, 1.0), Error);
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 2 + trial % 2;
        const double alpha = 1.5 + 0.5 * (trial % 4);
        const Hypergraph h = testing::random_hypergraph(rng, k, 7, 0.4);
        CHECK(solved(h, alpha) <= edge_bound(k, static_cast<long long>(h.size()), alpha) + 1e-9);
    }
}

TEST_CASE("real binomial") {
    CHECK(real_binomial(5.0, 2) == doctest::Approx(10.0));
    CHECK(real_binomial(2.5, 2) == doctest::Approx(1.875));
    CHECK(real_binomial(7.0, 0) == 1.0);
}

TEST_CASE("shadow bound check") {
    const Hypergraph k3 = complete(2, 3);
    const auto r = kk_check(k3, 2.0, 2.0);
    CHECK(r.x == doctest::Approx((1.0 + std::sqrt(17.0)) / 2.0).epsilon(1e-10));
    CHECK(r.shadow_bound == doctest::Approx(r.x));
    CHECK(r.shadow_size == 3);
    CHECK(r.holds);
    // x solves (k! C(x,k))^(1 - 1/alpha) = lambda.
    const double lam = 60.0 / std::pow(5.0, 1.5);
    const auto c = kk_check(complete(3, 5), 2.0, lam);
    CHECK(std::sqrt(6.0 * real_binomial(c.x, 3)) == doctest::Approx(lam).epsilon(1e-10));
    CHECK(c.shadow_size == 10);
    CHECK(c.holds);
    CHECK_THROWS_AS(kk_check(k3, 1.0, 2.0), Error);
}
