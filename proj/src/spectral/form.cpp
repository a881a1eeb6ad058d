#include <cmath>
#include <string>

#include "hyperspec/kernels.hpp"
#include "hyperspec/spectral.hpp"
#include "spectral/numeric.hpp"

namespace hyperspec {

double alpha_mass(std::span<const double> values, double alpha) {
    double s = 0.0;
    for (double v : values) s += detail::safe_pow(v, alpha);
    return s;
}

WeightVector::WeightVector(double alpha, std::vector<double> values) : alpha_(alpha), values_(std::move(values)) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw Error(Errc::bad_alpha, "alpha must be a finite real >= 1");
    for (double v : values_)
        if (!(v >= 0.0) || !std::isfinite(v)) throw Error(Errc::bad_params, "weights must be finite and nonnegative");
    if (!values_.empty() && std::abs(alpha_mass(values_, alpha) - 1.0) > 1e-12)
        throw Error(Errc::bad_params, "weights do not have unit alpha-norm");
}

WeightVector WeightVector::normalized(double alpha, std::vector<double> values) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw Error(Errc::bad_alpha, "alpha must be a finite real >= 1");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw Error(Errc::bad_params, "weights must be finite and nonnegative");
    if (!values.empty()) {
        const double mass = alpha_mass(values, alpha);
        if (mass <= 0.0) throw Error(Errc::bad_params, "cannot normalize the zero vector");
        detail::scale_to_unit(values, alpha);
    }
    return WeightVector(alpha, std::move(values));
}

AdjacencyForm::AdjacencyForm(const Hypergraph& h)
    : k_(h.uniformity()), n_(h.order()), edges_(h.size()), k_factorial_(1.0), km1_factorial_(1.0) {
    for (int i = 2; i <= k_; ++i) k_factorial_ *= i;
    for (int i = 2; i < k_; ++i) km1_factorial_ *= i;

    const auto k = static_cast<std::size_t>(k_);
    edge_cols_.resize(edges_ * k);
    for (std::size_t r = 0; r < edges_; ++r) {
        auto e = h.edge(r);
        for (std::size_t c = 0; c < k; ++c) edge_cols_[c * edges_ + r] = static_cast<std::int32_t>(e[c]);
    }

    auto deg = h.degrees();
    link_offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (int v = 0; v < n_; ++v) link_offsets_[v + 1] = link_offsets_[v] + static_cast<std::size_t>(deg[v]);
    link_rows_ = link_offsets_.back();
    link_cols_.resize(link_rows_ * (k - 1));
    std::vector<std::size_t> fill(link_offsets_.begin(), link_offsets_.end() - 1);
    for (std::size_t r = 0; r < edges_; ++r) {
        auto e = h.edge(r);
        for (std::size_t p = 0; p < k; ++p) {
            const std::size_t row = fill[e[p]]++;
            std::size_t c = 0;
            for (std::size_t q = 0; q < k; ++q) {
                if (q == p) continue;
                link_cols_[c * link_rows_ + row] = static_cast<std::int32_t>(e[q]);
                ++c;
            }
        }
    }
}

namespace {

void check_dim(std::size_t got, int n) {
    if (got != static_cast<std::size_t>(n))
        throw Error(Errc::dimension_mismatch,
                    "weight vector has " + std::to_string(got) + " entries, hypergraph has " + std::to_string(n) + " vertices");
}

}  // namespace

double AdjacencyForm::value(std::span<const double> x) const {
    check_dim(x.size(), n_);
    if (edges_ == 0) return 0.0;
    return k_factorial_ *
           kernels::sum_of_products(edge_cols_.data(), edges_, static_cast<std::size_t>(k_), 0, edges_, x.data());
}

double AdjacencyForm::partial(std::span<const double> x, Vertex i) const {
    check_dim(x.size(), n_);
    if (i >= static_cast<Vertex>(n_)) throw Error(Errc::vertex_range, "vertex " + std::to_string(i) + " is not below n");
    const std::size_t begin = link_offsets_[i];
    const std::size_t end = link_offsets_[i + 1];
    if (begin == end) return 0.0;
    return km1_factorial_ * kernels::sum_of_products(link_cols_.data(), link_rows_, static_cast<std::size_t>(k_ - 1),
                                                     begin, end, x.data());
}

void AdjacencyForm::partials(std::span<const double> x, std::span<double> out) const {
    check_dim(x.size(), n_);
    check_dim(out.size(), n_);
    const auto fn = kernels::kernel_for(kernels::active_path());
    for (int i = 0; i < n_; ++i) {
        const std::size_t begin = link_offsets_[i];
        const std::size_t end = link_offsets_[i + 1];
        out[i] = begin == end ? 0.0
                              : km1_factorial_ * fn(link_cols_.data(), link_rows_, static_cast<std::size_t>(k_ - 1),
                                                    begin, end, x.data());
    }
}

double tau_value(const Hypergraph& h, std::span<const double> x) { return AdjacencyForm(h).value(x); }

double tau_value(const Hypergraph& h, const WeightVector& w) { return tau_value(h, std::span<const double>(w.values())); }

double partial(const Hypergraph& h, std::span<const double> x, Vertex i) { return AdjacencyForm(h).partial(x, i); }

double partial(const Hypergraph& h, const WeightVector& w, Vertex i) {
    return partial(h, std::span<const double>(w.values()), i);
}

double kkt_residual(const Hypergraph& h, const WeightVector& w, double lambda) {
    AdjacencyForm form(h);
    std::vector<double> g(static_cast<std::size_t>(h.order()));
    form.partials(w.values(), g);
    const double alpha = w.alpha();
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (alpha == 1.0 && w[i] == 0.0) continue;
        worst = std::max(worst, std::abs(g[i] - lambda * detail::safe_pow(w[i], alpha - 1.0)));
    }
    return worst;
}

}  // namespace hyperspec
