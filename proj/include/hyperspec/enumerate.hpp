#pragma once

// Exhaustive enumeration of F-free hypergraphs on a small vertex set.
//
// A hypergraph on [n] is encoded as a bitmask over the C(n,k) possible edges,
// bit r standing for the k-set of colex rank r. Isomorph rejection uses the
// canonical form "lexicographically smallest sorted list of edge ranks over all
// n! relabelings", found by branch and bound over partial relabelings. Under
// this form, removing the highest-ranked edge of a canonical hypergraph leaves
// a canonical hypergraph, so classes are generated orderly: each canonical
// graph is extended only by edges ranked above its last edge.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

using EdgeMask = std::uint64_t;

inline constexpr long long default_search_guard = 36;

/// Throws Error{search_too_large} when C(n,k) exceeds the guard (unless
/// forced) or the 64-bit mask width (always).
void check_search_guard(int k, int n, bool force, long long guard = default_search_guard);

class EdgeIndex {
public:
    EdgeIndex(int k, int n);

    int uniformity() const noexcept { return k_; }
    int order() const noexcept { return n_; }
    int slots() const noexcept { return static_cast<int>(vertex_masks_.size()); }

    std::span<const Vertex> subset(int rank) const noexcept {
        return {subsets_.data() + static_cast<std::size_t>(rank) * static_cast<std::size_t>(k_),
                static_cast<std::size_t>(k_)};
    }
    std::uint64_t vertex_mask(int rank) const noexcept { return vertex_masks_[static_cast<std::size_t>(rank)]; }
    /// `s` must be sorted.
    int rank_of(std::span<const Vertex> s) const noexcept;

    EdgeMask mask_of(const Hypergraph& h) const;
    Hypergraph to_hypergraph(EdgeMask m) const;

private:
    int k_;
    int n_;
    std::vector<Vertex> subsets_;
    std::vector<std::uint64_t> vertex_masks_;
};

/// Sorted edge ranks of the canonical relabeling of `m`.
std::vector<int> canonical_ranks(const EdgeIndex& idx, EdgeMask m);
EdgeMask canonical_mask(const EdgeIndex& idx, EdgeMask m);
bool is_canonical(const EdgeIndex& idx, EdgeMask m);

Hypergraph canonical_form(const Hypergraph& h);
bool isomorphic(const Hypergraph& a, const Hypergraph& b);

/// Every copy of every family member inside K^k_n, as edge masks, indexed by
/// the edges they use.
class ForbiddenCopies {
public:
    ForbiddenCopies(const EdgeIndex& idx, const FamilySpec& family);

    /// Would adding edge `rank` to the (free) hypergraph `m` create a copy?
    bool creates_copy(EdgeMask m, int rank) const noexcept;
    bool is_free(EdgeMask m) const noexcept;
    /// A member with no edges fits in every hypergraph on n vertices.
    bool forbids_everything() const noexcept { return forbids_everything_; }
    std::size_t copy_count() const noexcept { return copies_.size(); }

private:
    std::vector<EdgeMask> copies_;
    std::vector<std::vector<std::uint32_t>> by_rank_;
    bool forbids_everything_ = false;
};

struct EnumerationOptions {
    bool up_to_iso = true;
    bool force = false;
    long long guard = default_search_guard;
};

using MaskVisitor = std::function<void(EdgeMask)>;
/// Called on each canonical node before its children are generated; return
/// false to skip the subtree. Only consulted when up_to_iso is set.
using SubtreeFilter = std::function<bool(EdgeMask, int last_rank)>;

void enumerate_free_masks(const EdgeIndex& idx, const FamilySpec& family, const EnumerationOptions& opts,
                          const MaskVisitor& visit, const SubtreeFilter& expand = {});

/// Every F-free k-graph on n vertices (one per isomorphism class if up_to_iso).
void enumerate_free(int k, int n, const FamilySpec& family, bool up_to_iso,
                    const std::function<void(const Hypergraph&)>& visit, bool force = false);
std::vector<Hypergraph> collect_free(int k, int n, const FamilySpec& family, bool up_to_iso, bool force = false);

}  // namespace hyperspec
