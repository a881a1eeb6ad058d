#include <string>

#include "hyperspec/spectral.hpp"
#include "spectral/numeric.hpp"

namespace hyperspec {

SymmetryPartition::SymmetryPartition(std::vector<std::vector<Vertex>> classes) : classes_(std::move(classes)) {
    std::size_t n = 0;
    for (const auto& c : classes_) n += c.size();
    block_of_.assign(n, n);
    for (std::size_t b = 0; b < classes_.size(); ++b) {
        if (classes_[b].empty()) throw Error(Errc::bad_params, "empty block in partition");
        for (Vertex v : classes_[b]) {
            if (v >= n || block_of_[v] != n) throw Error(Errc::bad_params, "blocks must partition 0..n-1");
            block_of_[v] = b;
        }
    }
}

SymmetryPartition symmetry_partition(const Hypergraph& h) {
    // Swapping is transitive here: (i k) = (i j)(j k)(i j), so comparing each
    // vertex against one representative per block is enough.
    std::vector<std::vector<Vertex>> classes;
    for (Vertex v = 0; v < static_cast<Vertex>(h.order()); ++v) {
        bool placed = false;
        for (auto& c : classes) {
            if (is_transposition_automorphism(h, c.front(), v)) {
                c.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({v});
    }
    return SymmetryPartition(std::move(classes));
}

WeightVector symmetrize_pair(const Hypergraph& h, const WeightVector& w, Vertex i, Vertex j) {
    if (w.size() != static_cast<std::size_t>(h.order()))
        throw Error(Errc::dimension_mismatch, "weight vector length differs from vertex count");
    if (!is_transposition_automorphism(h, i, j))
        throw Error(Errc::not_automorphism, "(" + std::to_string(i) + " " + std::to_string(j) + ") is not an automorphism");
    auto v = w.values();
    if (v[i] == v[j]) return w;
    const double a = w.alpha();
    const double m = detail::safe_pow((detail::safe_pow(v[i], a) + detail::safe_pow(v[j], a)) / 2.0, 1.0 / a);
    v[i] = m;
    v[j] = m;
    return WeightVector::normalized(a, std::move(v));
}

}  // namespace hyperspec
