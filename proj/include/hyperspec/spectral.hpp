#pragma once

// The adjacency form tau_H(x,...,x) = k! * sum over edges of the product of
// the edge's coordinates, and the alpha-spectral radius
//
//     lambda_alpha(H) = max { tau_H(x,...,x) : x >= 0, sum_i x_i^alpha = 1 }.
//
// Restricting to x >= 0 loses nothing since tau_H(|x|) >= tau_H(x).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

/// Nonnegative weights with unit alpha-norm.
class WeightVector {
public:
    /// Validates: alpha >= 1, entries >= 0 and sum values^alpha = 1 to 1e-12.
    WeightVector(double alpha, std::vector<double> values);
    /// Scales nonnegative `values` onto the unit alpha-sphere. Throws
    /// Error{bad_params} if they are all zero.
    static WeightVector normalized(double alpha, std::vector<double> values);

    double alpha() const noexcept { return alpha_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

private:
    double alpha_;
    std::vector<double> values_;
};

/// Sum of values^alpha (alpha-norm raised to alpha).
double alpha_mass(std::span<const double> values, double alpha);

/// Precomputed index tables for repeated evaluation of tau_H and its partial
/// maps tau_H(e_i, x, ..., x).
class AdjacencyForm {
public:
    explicit AdjacencyForm(const Hypergraph& h);

    int uniformity() const noexcept { return k_; }
    int order() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_; }

    /// tau_H(x,...,x).
    double value(std::span<const double> x) const;
    /// tau_H(e_i, x, ..., x) = (k-1)! * sum over edges e containing i of prod_{v in e-i} x_v.
    double partial(std::span<const double> x, Vertex i) const;
    /// All partials; `out` has n entries.
    void partials(std::span<const double> x, std::span<double> out) const;

private:
    int k_;
    int n_;
    std::size_t edges_;
    double k_factorial_;
    double km1_factorial_;
    std::vector<std::int32_t> edge_cols_;  // column-major, k columns
    std::vector<std::int32_t> link_cols_;  // column-major, k-1 columns
    std::vector<std::size_t> link_offsets_;
    std::size_t link_rows_ = 0;
};

double tau_value(const Hypergraph& h, std::span<const double> x);
double tau_value(const Hypergraph& h, const WeightVector& w);
double partial(const Hypergraph& h, const WeightVector& w, Vertex i);
double partial(const Hypergraph& h, std::span<const double> x, Vertex i);

/// max_i |tau_H(e_i,w,...,w) - lambda * w_i^(alpha-1)|. For alpha = 1 the
/// maximum runs over the support of w only.
double kkt_residual(const Hypergraph& h, const WeightVector& w, double lambda);

/// Classes of i ~ j iff the transposition (i j) is an automorphism.
class SymmetryPartition {
public:
    explicit SymmetryPartition(std::vector<std::vector<Vertex>> classes);

    const std::vector<std::vector<Vertex>>& classes() const noexcept { return classes_; }
    std::size_t block_count() const noexcept { return classes_.size(); }
    std::size_t block_of(Vertex v) const { return block_of_.at(v); }

private:
    std::vector<std::vector<Vertex>> classes_;
    std::vector<std::size_t> block_of_;
};

SymmetryPartition symmetry_partition(const Hypergraph& h);

/// Replace w_i, w_j by their alpha-power mean. Requires (i j) to be an
/// automorphism (Error{not_automorphism} otherwise); never lowers tau.
WeightVector symmetrize_pair(const Hypergraph& h, const WeightVector& w, Vertex i, Vertex j);

enum class SolverMethod { automatic, power, gradient };

const char* to_string(SolverMethod m) noexcept;

struct SolverConfig {
    double alpha = 2.0;
    double tol_kkt = 1e-10;
    double tol_step = 1e-13;
    long long max_iter = 100000;
    int num_random_starts = 16;
    std::uint64_t seed = 0;
    SolverMethod method = SolverMethod::automatic;
    /// Worker threads for independent starts; never changes the result.
    int threads = 1;
};

struct SpectralResult {
    double lambda = 0.0;
    WeightVector witness{1.0, {}};
    double kkt_residual = 0.0;
    long long iterations = 0;
    bool converged = false;
    std::string start_label;
    /// Best value over block-constant vectors (the symmetry-reduced problem),
    /// present when the partition has fewer blocks than vertices.
    std::optional<double> reduced_lambda;
    int starts = 0;
};

/// Multi-start maximization of tau_H over the nonnegative unit alpha-sphere.
/// Throws Error{bad_alpha} for alpha < 1 and Error{bad_params} for n = 0.
SpectralResult solve(const Hypergraph& h, const SolverConfig& cfg);

/// (1 - w_u^a)^(-k/a) (1 - k w_u^a) * lambda, a lower bound for lambda(H - u).
/// Throws Error{bound_void} when w_u^alpha >= 1/k.
double deletion_bound(const Hypergraph& h, const SpectralResult& result, Vertex u);

}  // namespace hyperspec
