#include <algorithm>
#include <numeric>
#include <optional>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

namespace {

// Edge membership for the host graph. Uses vertex bitmasks when n <= 64.
class EdgeLookup {
public:
    explicit EdgeLookup(const Hypergraph& h) : host_(h), use_masks_(h.order() <= 64) {
        if (!use_masks_) return;
        masks_.reserve(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) {
            std::uint64_t m = 0;
            for (Vertex v : h.edge(i)) m |= std::uint64_t{1} << v;
            masks_.push_back(m);
        }
        std::sort(masks_.begin(), masks_.end());
    }

    // `image` is scratch and may be reordered.
    bool has(std::vector<Vertex>& image) const {
        if (use_masks_) {
            std::uint64_t m = 0;
            for (Vertex v : image) m |= std::uint64_t{1} << v;
            return std::binary_search(masks_.begin(), masks_.end(), m);
        }
        std::sort(image.begin(), image.end());
        return host_.has_edge(image);
    }

private:
    const Hypergraph& host_;
    bool use_masks_;
    std::vector<std::uint64_t> masks_;
};

// Backtracking search for an injective, edge-preserving map pattern -> host.
// Pattern vertices are placed in order of descending degree; each pattern edge
// is checked as soon as its last vertex is placed.
class Embedder {
public:
    Embedder(const Hypergraph& host, const Hypergraph& pattern, std::optional<std::pair<Vertex, Vertex>> pin)
        : host_(host), pattern_(pattern), lookup_(host), pin_(pin) {
        host_deg_ = host.degrees();
        pat_deg_ = pattern.degrees();

        std::vector<Vertex> verts;
        for (int v = 0; v < pattern.order(); ++v)
            if (pat_deg_[static_cast<std::size_t>(v)] > 0 || (pin && pin->first == static_cast<Vertex>(v)))
                verts.push_back(static_cast<Vertex>(v));
        std::stable_sort(verts.begin(), verts.end(),
                         [&](Vertex a, Vertex b) { return pat_deg_[a] > pat_deg_[b]; });
        if (pin) {
            auto it = std::find(verts.begin(), verts.end(), pin->first);
            std::rotate(verts.begin(), it, it + 1);
        }
        order_ = verts;

        std::vector<int> position(static_cast<std::size_t>(pattern.order()), -1);
        for (std::size_t p = 0; p < order_.size(); ++p) position[order_[p]] = static_cast<int>(p);
        closing_.assign(order_.size(), {});
        for (std::size_t e = 0; e < pattern.size(); ++e) {
            int last = -1;
            for (Vertex v : pattern.edge(e)) last = std::max(last, position[v]);
            closing_[static_cast<std::size_t>(last)].push_back(e);
        }
        image_.assign(static_cast<std::size_t>(pattern.order()), 0);
        used_.assign(static_cast<std::size_t>(host.order()), false);
        scratch_.resize(static_cast<std::size_t>(pattern.uniformity()));
    }

    bool run() {
        if (host_.uniformity() != pattern_.uniformity())
            throw Error(Errc::uniformity_mismatch, "containment between different uniformities");
        if (host_.order() < pattern_.order() || host_.size() < pattern_.size()) return false;
        return place(0);
    }

private:
    bool place(std::size_t p) {
        if (p == order_.size()) return true;
        const Vertex pv = order_[p];
        for (int hv = 0; hv < host_.order(); ++hv) {
            const auto h = static_cast<Vertex>(hv);
            if (used_[h] || host_deg_[h] < pat_deg_[pv]) continue;
            if (p == 0 && pin_ && h != pin_->second) continue;
            image_[pv] = h;
            if (!edges_ok(p)) continue;
            used_[h] = true;
            if (place(p + 1)) return true;
            used_[h] = false;
        }
        return false;
    }

    bool edges_ok(std::size_t p) {
        for (std::size_t e : closing_[p]) {
            auto edge = pattern_.edge(e);
            for (std::size_t i = 0; i < edge.size(); ++i) scratch_[i] = image_[edge[i]];
            if (!lookup_.has(scratch_)) return false;
        }
        return true;
    }

    const Hypergraph& host_;
    const Hypergraph& pattern_;
    EdgeLookup lookup_;
    std::optional<std::pair<Vertex, Vertex>> pin_;
    std::vector<int> host_deg_, pat_deg_;
    std::vector<Vertex> order_;
    std::vector<std::vector<std::size_t>> closing_;
    std::vector<Vertex> image_;
    std::vector<bool> used_;
    std::vector<Vertex> scratch_;
};

}  // namespace

bool contains(const Hypergraph& h, const Hypergraph& f) { return Embedder(h, f, std::nullopt).run(); }

bool is_family_free(const Hypergraph& h, const FamilySpec& family) {
    return std::none_of(family.members().begin(), family.members().end(),
                        [&](const Hypergraph& f) { return contains(h, f); });
}

bool is_subgraph_up_to_relabeling(const Hypergraph& f, const Hypergraph& g) {
    return f.order() == g.order() && contains(g, f);
}

bool is_vertex_transitive(const Hypergraph& h) {
    const auto deg = h.degrees();
    for (int v = 1; v < h.order(); ++v) {
        if (deg[static_cast<std::size_t>(v)] != deg[0]) return false;
        // Same edge count, so an injective edge-preserving self-map is an automorphism.
        if (!Embedder(h, h, std::make_pair(Vertex{0}, static_cast<Vertex>(v))).run()) return false;
    }
    return true;
}

}  // namespace hyperspec
