#include <algorithm>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

namespace {

// All k-subsets of [n] in colex order.
std::vector<std::vector<Vertex>> subsets_colex(int k, int n) {
    std::vector<std::vector<Vertex>> out;
    if (k > n) return out;
    std::vector<Vertex> cur(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = static_cast<Vertex>(i);
    while (true) {
        out.push_back(cur);
        // Colex successor: bump the lowest position that can move up without
        // colliding with the next one, then reset everything below it.
        int p = 0;
        while (p < k) {
            Vertex limit = (p + 1 < k) ? cur[static_cast<std::size_t>(p) + 1] : static_cast<Vertex>(n);
            if (cur[static_cast<std::size_t>(p)] + 1 < limit) break;
            ++p;
        }
        if (p == k) break;
        ++cur[static_cast<std::size_t>(p)];
        for (int q = 0; q < p; ++q) cur[static_cast<std::size_t>(q)] = static_cast<Vertex>(q);
    }
    return out;
}

std::vector<int> balanced_part_of(int parts, int n) {
    std::vector<int> part(static_cast<std::size_t>(n));
    const int q = n / parts;
    const int s = n % parts;
    int v = 0;
    for (int p = 0; p < parts; ++p) {
        const int size = q + (p < s ? 1 : 0);
        for (int j = 0; j < size; ++j) part[static_cast<std::size_t>(v++)] = p;
    }
    return part;
}

}  // namespace

Hypergraph complete(int k, int t) {
    if (k < 1 || t < k) throw Error(Errc::bad_params, "complete(k, t) needs 1 <= k <= t");
    return Hypergraph(k, t, subsets_colex(k, t));
}

Hypergraph turan_graph(int r, int n) {
    if (r < 1 || n < 0) throw Error(Errc::bad_params, "turan_graph(r, n) needs r >= 1, n >= 0");
    const auto part = balanced_part_of(r, n);
    std::vector<std::vector<Vertex>> edges;
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < b; ++a)
            if (part[static_cast<std::size_t>(a)] != part[static_cast<std::size_t>(b)])
                edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
    return Hypergraph(2, n, edges);
}

Hypergraph star(int k, int t, int n) {
    if (k < 1 || t < 0 || t > k || n < k) throw Error(Errc::bad_params, "star(k, t, n) needs 0 <= t <= k <= n");
    std::vector<std::vector<Vertex>> edges;
    for (auto rest : subsets_colex(k - t, n - t)) {
        std::vector<Vertex> e;
        for (int c = 0; c < t; ++c) e.push_back(static_cast<Vertex>(c));
        for (Vertex v : rest) e.push_back(v + static_cast<Vertex>(t));
        edges.push_back(std::move(e));
    }
    return Hypergraph(k, n, edges);
}

Hypergraph balanced_bipartite3(int n) {
    if (n < 3) throw Error(Errc::bad_params, "balanced_bipartite3(n) needs n >= 3");
    const auto split = static_cast<Vertex>(n / 2);
    std::vector<std::vector<Vertex>> edges;
    for (auto e : subsets_colex(3, n)) {
        const int low = static_cast<int>(std::count_if(e.begin(), e.end(), [&](Vertex v) { return v < split; }));
        if (low != 0 && low != 3) edges.push_back(std::move(e));
    }
    return Hypergraph(3, n, edges);
}

Hypergraph balanced_tripartite3(int n) {
    if (n < 3) throw Error(Errc::bad_params, "balanced_tripartite3(n) needs n >= 3");
    const auto part = balanced_part_of(3, n);
    std::vector<std::vector<Vertex>> edges;
    for (auto e : subsets_colex(3, n)) {
        const int a = part[e[0]], b = part[e[1]], c = part[e[2]];
        if (a != b && b != c && a != c) edges.push_back(std::move(e));
    }
    return Hypergraph(3, n, edges);
}

Hypergraph fano() {
    std::vector<std::vector<Vertex>> edges;
    for (Vertex x = 1; x <= 7; ++x)
        for (Vertex y = x + 1; y <= 7; ++y) {
            const Vertex z = x ^ y;
            if (z > y) edges.push_back({x - 1, y - 1, z - 1});
        }
    return Hypergraph(3, 7, edges);
}

Hypergraph f5() { return Hypergraph(3, 5, {{0, 1, 2}, {0, 1, 3}, {2, 3, 4}}); }

Hypergraph two_edges_sharing(int k, int i) {
    if (k < 1 || i < 0 || i >= k) throw Error(Errc::bad_params, "two_edges_sharing(k, i) needs 0 <= i < k");
    std::vector<Vertex> a, b;
    for (int v = 0; v < k; ++v) a.push_back(static_cast<Vertex>(v));
    for (int v = 0; v < i; ++v) b.push_back(static_cast<Vertex>(v));
    for (int v = k; v < 2 * k - i; ++v) b.push_back(static_cast<Vertex>(v));
    return Hypergraph(k, 2 * k - i, {a, b});
}

FamilySpec intersecting_family(int k, int t) {
    if (t < 1 || t >= k) throw Error(Errc::bad_params, "intersecting_family(k, t) needs 1 <= t < k");
    std::vector<Hypergraph> members;
    for (int i = 0; i < t; ++i) members.push_back(two_edges_sharing(k, i));
    return FamilySpec(std::move(members));
}

Hypergraph colex_segment(int k, long long m) {
    if (k < 1 || m < 0) throw Error(Errc::bad_params, "colex_segment(k, m) needs k >= 1, m >= 0");
    int n = k;
    while (binomial(n, k) < m) ++n;
    auto all = subsets_colex(k, n);
    all.resize(static_cast<std::size_t>(m));
    int used = 0;
    for (const auto& e : all) used = std::max(used, static_cast<int>(e.back()) + 1);
    return Hypergraph(k, used, all);
}

}  // namespace hyperspec
