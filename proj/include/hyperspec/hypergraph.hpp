#pragma once

// k-uniform hypergraphs on vertex set {0, ..., n-1}.
//
// Edges are stored as strictly increasing vertex tuples, and the edge list is
// kept in colexicographic order, so two Hypergraph values compare equal exactly
// when their edge sets are equal.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperspec {

using Vertex = std::uint32_t;

enum class Errc {
    edge_arity,
    vertex_range,
    duplicate_edge,
    bad_params,
    uniformity_mismatch,
    search_too_large,
    dimension_mismatch,
    not_automorphism,
    bad_alpha,
    bound_void,
    not_vertex_uniform,
    parse_error,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Colex order on sorted k-sets: A < B iff max(A xor B) lies in B.
bool colex_less(std::span<const Vertex> a, std::span<const Vertex> b) noexcept;

class Hypergraph {
public:
    /// The empty 1-uniform hypergraph on zero vertices.
    Hypergraph() = default;

    /// Validating constructor. Each edge may be given in any order; it is
    /// sorted. Throws Error{edge_arity | vertex_range | duplicate_edge}.
    Hypergraph(int k, int n, const std::vector<std::vector<Vertex>>& edges);

    static Hypergraph empty(int k, int n);

    int uniformity() const noexcept { return k_; }
    int order() const noexcept { return n_; }
    std::size_t size() const noexcept { return k_ == 0 ? 0 : verts_.size() / static_cast<std::size_t>(k_); }
    bool no_edges() const noexcept { return verts_.empty(); }

    std::span<const Vertex> edge(std::size_t i) const noexcept {
        return {verts_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
    }
    /// All edges back to back, `size() * uniformity()` entries.
    std::span<const Vertex> flat() const noexcept { return verts_; }

    /// `e` must be sorted.
    bool has_edge(std::span<const Vertex> e) const noexcept;

    std::vector<int> degrees() const;
    std::vector<std::vector<Vertex>> edge_list() const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    int k_ = 1;
    int n_ = 0;
    std::vector<Vertex> verts_;
};

/// A forbidden family; every member has the same uniformity.
class FamilySpec {
public:
    FamilySpec() = default;
    explicit FamilySpec(std::vector<Hypergraph> members);

    const std::vector<Hypergraph>& members() const noexcept { return members_; }
    bool empty() const noexcept { return members_.empty(); }
    /// Uniformity of the members, or 0 for the empty family.
    int uniformity() const noexcept;

private:
    std::vector<Hypergraph> members_;
};

// Named constructions ------------------------------------------------------

Hypergraph complete(int k, int t);
/// Balanced complete r-partite graph. Parts are contiguous vertex ranges,
/// larger parts first.
Hypergraph turan_graph(int r, int n);
/// Complete t-star S^k_{n,t}: all k-sets containing the center {0..t-1}.
Hypergraph star(int k, int t, int n);
/// Triples meeting both parts of {0..floor(n/2)-1} | {floor(n/2)..n-1}.
Hypergraph balanced_bipartite3(int n);
/// Triples with exactly one vertex in each of three balanced parts.
Hypergraph balanced_tripartite3(int n);
/// Fano plane: vertex v-1 is the nonzero vector v of F_2^3, edges are x+y=z.
Hypergraph fano();
/// F_5 = {012, 013, 234}.
Hypergraph f5();
/// Two k-edges sharing exactly i vertices, on 2k-i vertices.
Hypergraph two_edges_sharing(int k, int i);
/// {F_0, ..., F_{t-1}}: forbidding it means every two edges share >= t vertices.
FamilySpec intersecting_family(int k, int t);
/// First m k-sets in colex order on the fewest vertices that hold them.
Hypergraph colex_segment(int k, long long m);

// Structure ----------------------------------------------------------------

Hypergraph shadow(const Hypergraph& h);
/// delta_s(H): fewest edges through any s-set. delta_0 = e(H).
long long min_s_degree(const Hypergraph& h, int s);
/// Drop u and relabel the remaining vertices in increasing order.
Hypergraph delete_vertex(const Hypergraph& h, Vertex u);
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);
Hypergraph add_isolated(const Hypergraph& h, int count);
/// Image of H under the vertex map v -> perm[v].
Hypergraph relabel(const Hypergraph& h, std::span<const Vertex> perm);
bool is_transposition_automorphism(const Hypergraph& h, Vertex i, Vertex j);
/// True when every vertex can be mapped to every other by some automorphism.
bool is_vertex_transitive(const Hypergraph& h);

// Containment --------------------------------------------------------------

/// Is there an injective vertex map V(f) -> V(h) sending edges to edges?
bool contains(const Hypergraph& h, const Hypergraph& f);
bool is_family_free(const Hypergraph& h, const FamilySpec& family);
/// Same vertex count and f embeds in g: containment up to relabeling.
bool is_subgraph_up_to_relabeling(const Hypergraph& f, const Hypergraph& g);

// Text format --------------------------------------------------------------

/// Line 1 `k n`, then one edge per line; `#` comments and blank lines ignored.
Hypergraph parse_hypergraph(std::istream& in);
Hypergraph parse_hypergraph(const std::string& text);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
std::string to_text(const Hypergraph& h);
/// Compact one-line form, e.g. `0 1,0 2,1 2`.
std::string edges_compact(const Hypergraph& h);

long long binomial(int n, int k) noexcept;

}  // namespace hyperspec
