#include "hyperspec/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace hyperspec {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::edge_arity: return "EdgeArity";
        case Errc::vertex_range: return "VertexRange";
        case Errc::duplicate_edge: return "DuplicateEdge";
        case Errc::bad_params: return "BadParams";
        case Errc::uniformity_mismatch: return "UniformityMismatch";
        case Errc::search_too_large: return "SearchTooLarge";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::not_automorphism: return "NotAutomorphism";
        case Errc::bad_alpha: return "BadAlpha";
        case Errc::bound_void: return "BoundVoid";
        case Errc::not_vertex_uniform: return "NotVertexUniform";
        case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool colex_less(std::span<const Vertex> a, std::span<const Vertex> b) noexcept {
    // For equal-size sorted sets, colex is lexicographic order read from the top.
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (*ia != *ib) return *ia < *ib;
    }
    return a.size() < b.size();
}

Hypergraph::Hypergraph(int k, int n, const std::vector<std::vector<Vertex>>& edges) : k_(k), n_(n) {
    if (k < 1) throw Error(Errc::bad_params, "uniformity must be at least 1");
    if (n < 0) throw Error(Errc::bad_params, "vertex count must be nonnegative");

    std::vector<std::vector<Vertex>> sorted;
    sorted.reserve(edges.size());
    for (const auto& raw : edges) {
        auto e = raw;
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end() || static_cast<int>(e.size()) != k)
            throw Error(Errc::edge_arity, "edge does not have exactly " + std::to_string(k) + " distinct vertices");
        if (!e.empty() && e.back() >= static_cast<Vertex>(n))
            throw Error(Errc::vertex_range, "vertex " + std::to_string(e.back()) + " is not below n=" + std::to_string(n));
        sorted.push_back(std::move(e));
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return colex_less(a, b); });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(Errc::duplicate_edge, "edge listed twice");

    verts_.reserve(sorted.size() * static_cast<std::size_t>(k));
    for (const auto& e : sorted) verts_.insert(verts_.end(), e.begin(), e.end());
}

Hypergraph Hypergraph::empty(int k, int n) { return Hypergraph(k, n, {}); }

bool Hypergraph::has_edge(std::span<const Vertex> e) const noexcept {
    if (static_cast<int>(e.size()) != k_) return false;
    std::size_t lo = 0;
    std::size_t hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (colex_less(edge(mid), e))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < size() && std::equal(e.begin(), e.end(), edge(lo).begin());
}

std::vector<int> Hypergraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n_), 0);
    for (Vertex v : verts_) ++deg[v];
    return deg;
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto e = edge(i);
        out.emplace_back(e.begin(), e.end());
    }
    return out;
}

FamilySpec::FamilySpec(std::vector<Hypergraph> members) : members_(std::move(members)) {
    for (const auto& m : members_) {
        if (m.uniformity() != members_.front().uniformity())
            throw Error(Errc::uniformity_mismatch, "family members have different uniformities");
    }
}

int FamilySpec::uniformity() const noexcept { return members_.empty() ? 0 : members_.front().uniformity(); }

long long binomial(int n, int k) noexcept {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

// Colex rank of a sorted set via the combinatorial number system.
long long colex_rank(std::span<const Vertex> s) {
    long long r = 0;
    for (std::size_t i = 0; i < s.size(); ++i) r += binomial(static_cast<int>(s[i]), static_cast<int>(i) + 1);
    return r;
}

void for_each_subset(std::span<const Vertex> set, int size, std::vector<Vertex>& scratch, std::size_t start,
                     const auto& fn) {
    if (static_cast<int>(scratch.size()) == size) {
        fn(std::span<const Vertex>(scratch));
        return;
    }
    for (std::size_t i = start; i < set.size(); ++i) {
        scratch.push_back(set[i]);
        for_each_subset(set, size, scratch, i + 1, fn);
        scratch.pop_back();
    }
}

}  // namespace

Hypergraph shadow(const Hypergraph& h) {
    if (h.uniformity() < 2) throw Error(Errc::bad_params, "shadow needs k >= 2");
    std::vector<std::vector<Vertex>> faces;
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto e = h.edge(i);
        for (std::size_t skip = 0; skip < e.size(); ++skip) {
            std::vector<Vertex> f;
            for (std::size_t j = 0; j < e.size(); ++j)
                if (j != skip) f.push_back(e[j]);
            faces.push_back(std::move(f));
        }
    }
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    return Hypergraph(h.uniformity() - 1, h.order(), faces);
}

long long min_s_degree(const Hypergraph& h, int s) {
    if (s < 0 || s > h.uniformity() - 1) throw Error(Errc::bad_params, "s must lie in [0, k-1]");
    if (s == 0) return static_cast<long long>(h.size());
    const long long total_sets = binomial(h.order(), s);
    if (total_sets == 0) return 0;

    std::unordered_map<long long, long long> counts;
    std::vector<Vertex> scratch;
    for (std::size_t i = 0; i < h.size(); ++i) {
        for_each_subset(h.edge(i), s, scratch, 0, [&](std::span<const Vertex> sub) { ++counts[colex_rank(sub)]; });
    }
    if (static_cast<long long>(counts.size()) < total_sets) return 0;
    long long best = counts.begin()->second;
    for (const auto& [rank, c] : counts) best = std::min(best, c);
    return best;
}

Hypergraph delete_vertex(const Hypergraph& h, Vertex u) {
    if (u >= static_cast<Vertex>(h.order())) throw Error(Errc::vertex_range, "cannot delete a vertex outside [0, n)");
    std::vector<std::vector<Vertex>> kept;
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto e = h.edge(i);
        if (std::find(e.begin(), e.end(), u) != e.end()) continue;
        std::vector<Vertex> f(e.begin(), e.end());
        for (auto& v : f)
            if (v > u) --v;
        kept.push_back(std::move(f));
    }
    return Hypergraph(h.uniformity(), h.order() - 1, kept);
}

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
    if (a.uniformity() != b.uniformity()) throw Error(Errc::uniformity_mismatch, "disjoint union of different uniformities");
    auto edges = a.edge_list();
    const auto shift = static_cast<Vertex>(a.order());
    for (auto e : b.edge_list()) {
        for (auto& v : e) v += shift;
        edges.push_back(std::move(e));
    }
    return Hypergraph(a.uniformity(), a.order() + b.order(), edges);
}

Hypergraph add_isolated(const Hypergraph& h, int count) {
    if (count < 0) throw Error(Errc::bad_params, "negative isolated vertex count");
    return Hypergraph(h.uniformity(), h.order() + count, h.edge_list());
}

Hypergraph relabel(const Hypergraph& h, std::span<const Vertex> perm) {
    if (perm.size() != static_cast<std::size_t>(h.order()))
        throw Error(Errc::dimension_mismatch, "permutation length differs from vertex count");
    auto edges = h.edge_list();
    for (auto& e : edges)
        for (auto& v : e) v = perm[v];
    return Hypergraph(h.uniformity(), h.order(), edges);
}

bool is_transposition_automorphism(const Hypergraph& h, Vertex i, Vertex j) {
    if (i >= static_cast<Vertex>(h.order()) || j >= static_cast<Vertex>(h.order()))
        throw Error(Errc::vertex_range, "transposition outside [0, n)");
    if (i == j) return true;
    std::vector<Vertex> image(static_cast<std::size_t>(h.uniformity()));
    for (std::size_t e = 0; e < h.size(); ++e) {
        auto edge = h.edge(e);
        bool touched = false;
        for (std::size_t p = 0; p < edge.size(); ++p) {
            Vertex v = edge[p];
            if (v == i) {
                v = j;
                touched = true;
            } else if (v == j) {
                v = i;
                touched = true;
            }
            image[p] = v;
        }
        if (!touched) continue;
        std::sort(image.begin(), image.end());
        if (!h.has_edge(image)) return false;
    }
    return true;
}

}  // namespace hyperspec
