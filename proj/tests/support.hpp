#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/spectral.hpp"

namespace testing {

using hyperspec::Hypergraph;
using hyperspec::Vertex;

// Each k-subset of [n] kept with probability p; at least one edge when
// min_edges > 0.
inline Hypergraph random_hypergraph(std::mt19937_64& rng, int k, int n, double p, int min_edges = 1) {
    std::bernoulli_distribution keep(p);
    for (;;) {
        std::vector<std::vector<Vertex>> edges;
        std::vector<Vertex> cur;
        auto rec = [&](auto&& self, Vertex from) -> void {
            if (static_cast<int>(cur.size()) == k) {
                if (keep(rng)) edges.push_back(cur);
                return;
            }
            for (Vertex v = from; v < static_cast<Vertex>(n); ++v) {
                cur.push_back(v);
                self(self, v + 1);
                cur.pop_back();
            }
        };
        rec(rec, 0);
        if (static_cast<int>(edges.size()) >= min_edges) return Hypergraph(k, n, edges);
    }
}

inline std::vector<double> random_weights(std::mt19937_64& rng, int n, double alpha) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = u(rng);
    return hyperspec::WeightVector::normalized(alpha, x).values();
}

// H together with its image under the transposition (i j).
inline Hypergraph symmetric_closure(const Hypergraph& h, Vertex i, Vertex j) {
    auto edges = h.edge_list();
    const auto n = static_cast<std::size_t>(h.order());
    std::vector<Vertex> perm(n);
    for (std::size_t v = 0; v < n; ++v) perm[v] = static_cast<Vertex>(v);
    std::swap(perm[i], perm[j]);
    for (const auto& e : hyperspec::relabel(h, perm).edge_list())
        if (!h.has_edge(e)) edges.push_back(e);
    return Hypergraph(h.uniformity(), h.order(), edges);
}

// Largest adjacency eigenvalue of a graph by power iteration on A + I, read
// off with the Rayleigh quotient.
inline double adjacency_radius(const Hypergraph& g) {
    const auto n = static_cast<std::size_t>(g.order());
    if (g.size() == 0) return 0.0;
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t e = 0; e < g.size(); ++e) {
        const auto ed = g.edge(e);
        a[ed[0]][ed[1]] = a[ed[1]][ed[0]] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) a[i][i] += 1.0;
    std::vector<double> x(n, 1.0), y(n);
    for (int it = 0; it < 20000; ++it) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 0.0;
            for (std::size_t j = 0; j < n; ++j) y[i] += a[i][j] * x[j];
            norm += y[i] * y[i];
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < n; ++j) ax += a[i][j] * x[j];
        num += x[i] * ax;
        den += x[i] * x[i];
    }
    return num / den - 1.0;
}

}  // namespace testing
