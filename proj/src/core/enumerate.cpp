#include "hyperspec/enumerate.hpp"

#include <algorithm>
#include <bit>

namespace hyperspec {

void check_search_guard(int k, int n, bool force, long long guard) {
    const long long slots = binomial(n, k);
    if (slots > 64)
        throw Error(Errc::search_too_large,
                    "C(" + std::to_string(n) + "," + std::to_string(k) + ")=" + std::to_string(slots) +
                        " exceeds the 64-edge mask width");
    if (!force && slots > guard)
        throw Error(Errc::search_too_large, "C(" + std::to_string(n) + "," + std::to_string(k) + ")=" +
                                                std::to_string(slots) + " exceeds the guard " +
                                                std::to_string(guard) + "; pass force to override");
}

EdgeIndex::EdgeIndex(int k, int n) : k_(k), n_(n) {
    if (k < 1 || n < 0) throw Error(Errc::bad_params, "EdgeIndex needs k >= 1, n >= 0");
    check_search_guard(k, n, true);
    if (k > n) return;
    const Hypergraph all = complete(k, n);
    subsets_.assign(all.flat().begin(), all.flat().end());
    for (std::size_t r = 0; r < all.size(); ++r) {
        std::uint64_t m = 0;
        for (Vertex v : all.edge(r)) m |= std::uint64_t{1} << v;
        vertex_masks_.push_back(m);
    }
}

int EdgeIndex::rank_of(std::span<const Vertex> s) const noexcept {
    long long r = 0;
    for (std::size_t i = 0; i < s.size(); ++i) r += binomial(static_cast<int>(s[i]), static_cast<int>(i) + 1);
    return static_cast<int>(r);
}

EdgeMask EdgeIndex::mask_of(const Hypergraph& h) const {
    if (h.uniformity() != k_ || h.order() != n_)
        throw Error(Errc::dimension_mismatch, "hypergraph shape differs from the edge index");
    EdgeMask m = 0;
    for (std::size_t i = 0; i < h.size(); ++i) m |= EdgeMask{1} << rank_of(h.edge(i));
    return m;
}

Hypergraph EdgeIndex::to_hypergraph(EdgeMask m) const {
    std::vector<std::vector<Vertex>> edges;
    for (EdgeMask rest = m; rest; rest &= rest - 1) {
        auto e = subset(std::countr_zero(rest));
        edges.emplace_back(e.begin(), e.end());
    }
    return Hypergraph(k_, n_, edges);
}

namespace {

enum class Cmp { less, equal, greater };

// Branch and bound over relabelings. New label j goes to one unlabeled old
// vertex per level; once labels 0..j are placed, every relabeled edge with
// rank below C(j+1,k) is known and those ranks form a prefix of the sorted
// rank list. Partial lists are compared against a reference list.
class CanonSearch {
public:
    CanonSearch(const EdgeIndex& idx, EdgeMask m) : idx_(idx), n_(idx.order()), k_(idx.uniformity()) {
        incident_.assign(static_cast<std::size_t>(n_), {});
        for (EdgeMask rest = m; rest; rest &= rest - 1) {
            const int r = std::countr_zero(rest);
            for (Vertex v : idx.subset(r)) incident_[v].push_back(r);
        }
        label_.assign(static_cast<std::size_t>(n_), -1);
        for (int j = 0; j <= n_; ++j) bound_.push_back(binomial(j, k_));
        scratch_.resize(static_cast<std::size_t>(k_));
    }

    // Smallest relabeled rank list.
    std::vector<int> minimise() {
        mode_ = Mode::minimise;
        have_ref_ = false;
        descend(0);
        return ref_;
    }

    // True when no relabeling beats `target`.
    bool test(std::vector<int> target) {
        mode_ = Mode::test;
        ref_ = std::move(target);
        have_ref_ = true;
        found_smaller_ = false;
        descend(0);
        return !found_smaller_;
    }

private:
    enum class Mode { minimise, test };

    Cmp compare(int depth) const {
        const long long limit = bound_[static_cast<std::size_t>(depth) + 1];
        const auto cnt = static_cast<std::size_t>(std::lower_bound(ref_.begin(), ref_.end(), limit) - ref_.begin());
        const std::size_t common = std::min(cnt, partial_.size());
        for (std::size_t i = 0; i < common; ++i) {
            if (partial_[i] != ref_[i]) return partial_[i] < ref_[i] ? Cmp::less : Cmp::greater;
        }
        // The shorter side continues with a rank >= limit, above anything the other has left here.
        if (partial_.size() < cnt) return Cmp::greater;
        if (partial_.size() > cnt) return Cmp::less;
        return Cmp::equal;
    }

    void descend(int depth) {
        if (found_smaller_) return;
        if (depth == n_) {
            if (mode_ == Mode::minimise && (!have_ref_ || partial_ < ref_)) {
                ref_ = partial_;
                have_ref_ = true;
            }
            return;
        }
        bool tried_isolated = false;
        for (int v = 0; v < n_; ++v) {
            if (label_[static_cast<std::size_t>(v)] >= 0) continue;
            // Isolated vertices are interchangeable; try one of them.
            if (incident_[static_cast<std::size_t>(v)].empty()) {
                if (tried_isolated) continue;
                tried_isolated = true;
            }
            label_[static_cast<std::size_t>(v)] = depth;
            const std::size_t before = partial_.size();
            append_block(v);
            bool go = true;
            if (have_ref_) {
                const Cmp c = compare(depth);
                if (c == Cmp::greater) go = false;
                if (c == Cmp::less && mode_ == Mode::test) {
                    found_smaller_ = true;
                    go = false;
                }
            }
            if (go) descend(depth + 1);
            partial_.resize(before);
            label_[static_cast<std::size_t>(v)] = -1;
            if (found_smaller_) return;
        }
    }

    void append_block(int v) {
        const std::size_t start = partial_.size();
        for (int r : incident_[static_cast<std::size_t>(v)]) {
            bool done = true;
            std::size_t i = 0;
            for (Vertex u : idx_.subset(r)) {
                const int l = label_[u];
                if (l < 0) {
                    done = false;
                    break;
                }
                scratch_[i++] = static_cast<Vertex>(l);
            }
            if (!done) continue;
            std::sort(scratch_.begin(), scratch_.end());
            partial_.push_back(idx_.rank_of(scratch_));
        }
        std::sort(partial_.begin() + static_cast<std::ptrdiff_t>(start), partial_.end());
    }

    const EdgeIndex& idx_;
    int n_;
    int k_;
    std::vector<std::vector<int>> incident_;
    std::vector<int> label_;
    std::vector<long long> bound_;
    std::vector<Vertex> scratch_;
    std::vector<int> partial_;
    std::vector<int> ref_;
    bool have_ref_ = false;
    bool found_smaller_ = false;
    Mode mode_ = Mode::minimise;
};

std::vector<int> ranks_of(EdgeMask m) {
    std::vector<int> out;
    for (EdgeMask rest = m; rest; rest &= rest - 1) out.push_back(std::countr_zero(rest));
    return out;
}

}  // namespace

std::vector<int> canonical_ranks(const EdgeIndex& idx, EdgeMask m) {
    if (m == 0) return {};
    return CanonSearch(idx, m).minimise();
}

EdgeMask canonical_mask(const EdgeIndex& idx, EdgeMask m) {
    EdgeMask out = 0;
    for (int r : canonical_ranks(idx, m)) out |= EdgeMask{1} << r;
    return out;
}

bool is_canonical(const EdgeIndex& idx, EdgeMask m) {
    if (m == 0) return true;
    return CanonSearch(idx, m).test(ranks_of(m));
}

Hypergraph canonical_form(const Hypergraph& h) {
    const EdgeIndex idx(h.uniformity(), h.order());
    return idx.to_hypergraph(canonical_mask(idx, idx.mask_of(h)));
}

bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.uniformity() != b.uniformity() || a.order() != b.order() || a.size() != b.size()) return false;
    if (a == b) return true;
    return canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------

namespace {

void embed_all(const EdgeIndex& idx, const Hypergraph& f, std::vector<EdgeMask>& out) {
    const int n = idx.order();
    std::vector<Vertex> verts;
    const auto deg = f.degrees();
    for (int v = 0; v < f.order(); ++v)
        if (deg[static_cast<std::size_t>(v)] > 0) verts.push_back(static_cast<Vertex>(v));
    std::vector<Vertex> image(static_cast<std::size_t>(f.order()), 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<Vertex> e(static_cast<std::size_t>(f.uniformity()));

    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == verts.size()) {
            EdgeMask m = 0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                auto fe = f.edge(i);
                for (std::size_t j = 0; j < fe.size(); ++j) e[j] = image[fe[j]];
                std::sort(e.begin(), e.end());
                m |= EdgeMask{1} << idx.rank_of(e);
            }
            out.push_back(m);
            return;
        }
        for (int h = 0; h < n; ++h) {
            if (used[static_cast<std::size_t>(h)]) continue;
            used[static_cast<std::size_t>(h)] = true;
            image[verts[p]] = static_cast<Vertex>(h);
            self(self, p + 1);
            used[static_cast<std::size_t>(h)] = false;
        }
    };
    rec(rec, 0);
}

}  // namespace

ForbiddenCopies::ForbiddenCopies(const EdgeIndex& idx, const FamilySpec& family) {
    by_rank_.assign(static_cast<std::size_t>(idx.slots()), {});
    for (const auto& f : family.members()) {
        if (f.uniformity() != idx.uniformity())
            throw Error(Errc::uniformity_mismatch, "forbidden member has a different uniformity");
        if (f.order() > idx.order()) continue;
        if (f.no_edges()) {
            forbids_everything_ = true;
            continue;
        }
        embed_all(idx, f, copies_);
    }
    std::sort(copies_.begin(), copies_.end());
    copies_.erase(std::unique(copies_.begin(), copies_.end()), copies_.end());
    for (std::size_t c = 0; c < copies_.size(); ++c)
        for (EdgeMask rest = copies_[c]; rest; rest &= rest - 1)
            by_rank_[static_cast<std::size_t>(std::countr_zero(rest))].push_back(static_cast<std::uint32_t>(c));
}

bool ForbiddenCopies::creates_copy(EdgeMask m, int rank) const noexcept {
    const EdgeMask next = m | (EdgeMask{1} << rank);
    for (std::uint32_t c : by_rank_[static_cast<std::size_t>(rank)])
        if ((copies_[c] & ~next) == 0) return true;
    return false;
}

bool ForbiddenCopies::is_free(EdgeMask m) const noexcept {
    if (forbids_everything_) return false;
    return std::none_of(copies_.begin(), copies_.end(), [&](EdgeMask c) { return (c & ~m) == 0; });
}

void enumerate_free_masks(const EdgeIndex& idx, const FamilySpec& family, const EnumerationOptions& opts,
                          const MaskVisitor& visit, const SubtreeFilter& expand) {
    check_search_guard(idx.uniformity(), idx.order(), opts.force, opts.guard);
    const ForbiddenCopies copies(idx, family);
    if (copies.forbids_everything()) return;
    const int slots = idx.slots();

    if (!opts.up_to_iso) {
        auto rec = [&](auto&& self, int r, EdgeMask m) -> void {
            if (r == slots) {
                visit(m);
                return;
            }
            if (!copies.creates_copy(m, r)) self(self, r + 1, m | (EdgeMask{1} << r));
            self(self, r + 1, m);
        };
        rec(rec, 0, 0);
        return;
    }

    auto grow = [&](auto&& self, EdgeMask m, int last) -> void {
        visit(m);
        if (expand && !expand(m, last)) return;
        for (int r = last + 1; r < slots; ++r) {
            if (copies.creates_copy(m, r)) continue;
            const EdgeMask child = m | (EdgeMask{1} << r);
            if (!is_canonical(idx, child)) continue;
            self(self, child, r);
        }
    };
    grow(grow, 0, -1);
}

void enumerate_free(int k, int n, const FamilySpec& family, bool up_to_iso,
                    const std::function<void(const Hypergraph&)>& visit, bool force) {
    check_search_guard(k, n, force);
    if (!family.empty() && family.uniformity() != k)
        throw Error(Errc::uniformity_mismatch, "family uniformity differs from k");
    const EdgeIndex idx(k, n);
    EnumerationOptions opts;
    opts.up_to_iso = up_to_iso;
    opts.force = force;
    enumerate_free_masks(idx, family, opts, [&](EdgeMask m) { visit(idx.to_hypergraph(m)); });
}

std::vector<Hypergraph> collect_free(int k, int n, const FamilySpec& family, bool up_to_iso, bool force) {
    std::vector<Hypergraph> out;
    enumerate_free(k, n, family, up_to_iso, [&](const Hypergraph& h) { out.push_back(h); }, force);
    return out;
}

}  // namespace hyperspec
