#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hyperspec/spectral.hpp"
#include "parallel.hpp"
#include "spectral/numeric.hpp"

namespace hyperspec {

const char* to_string(SolverMethod m) noexcept {
    switch (m) {
        case SolverMethod::automatic: return "auto";
        case SolverMethod::power: return "power";
        case SolverMethod::gradient: return "gradient";
    }
    return "auto";
}

namespace {

using detail::safe_pow;

enum class StepKind { power, shifted_power, sphere_gradient, simplex_gradient };

struct Start {
    std::string label;
    std::vector<double> w;
    bool reduced = false;
};

struct Run {
    std::vector<double> w;
    double tau = 0.0;
    double residual = 0.0;
    long long iterations = 0;
    bool converged = false;
};

// Projection of v onto the probability simplex.
void project_simplex(std::vector<double>& v) {
    std::vector<double> u(v);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cum += u[j];
        const double t = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) theta = t;
    }
    for (double& x : v) x = std::max(x - theta, 0.0);
}

class Optimizer {
public:
    Optimizer(const Hypergraph& h, const AdjacencyForm& form, const SolverConfig& cfg, const SymmetryPartition& part)
        : h_(h), form_(form), cfg_(cfg), part_(part), n_(h.order()), k_(h.uniformity()), alpha_(cfg.alpha) {
        km1_factorial_ = 1.0;
        for (int i = 2; i < k_; ++i) km1_factorial_ *= i;
    }

    StepKind initial_kind() const {
        if (alpha_ == 1.0) return StepKind::simplex_gradient;
        const double k = static_cast<double>(k_);
        switch (cfg_.method) {
            case SolverMethod::gradient: return StepKind::sphere_gradient;
            case SolverMethod::power: return alpha_ > k ? StepKind::power : StepKind::shifted_power;
            case SolverMethod::automatic: break;
        }
        if (alpha_ > k + 1e-12) return StepKind::power;
        if (alpha_ >= k - 1e-12) return StepKind::shifted_power;
        return StepKind::sphere_gradient;
    }

    void normalize(std::vector<double>& w) const { detail::scale_to_unit(w, alpha_); }

    void block_project(std::vector<double>& w) const {
        for (const auto& block : part_.classes()) {
            if (block.size() < 2) continue;
            double s = 0.0;
            for (Vertex v : block) s += safe_pow(w[v], alpha_);
            const double m = safe_pow(s / static_cast<double>(block.size()), 1.0 / alpha_);
            for (Vertex v : block) w[v] = m;
        }
    }

    // First-order certificate at w with lambda = tau(w).
    double residual(const std::vector<double>& w, double lambda, bool& boundary_ok) const {
        std::vector<double> g(static_cast<std::size_t>(n_));
        form_.partials(w, g);
        double worst = 0.0;
        boundary_ok = true;
        for (int i = 0; i < n_; ++i) {
            if (alpha_ == 1.0) {
                if (w[i] > 0.0)
                    worst = std::max(worst, std::abs(g[i] - lambda));
                else if (g[i] > lambda + cfg_.tol_kkt)
                    boundary_ok = false;
            } else {
                worst = std::max(worst, std::abs(g[i] - lambda * safe_pow(w[i], alpha_ - 1.0)));
            }
        }
        return worst;
    }

    Run run(std::vector<double> w, bool reduced) const {
        Run out;
        if (reduced) block_project(w);
        normalize(w);
        double tau = form_.value(w);
        StepKind kind = initial_kind();
        double eta = 0.0;
        long long next_polish = 0;
        long long polish_gap = 16;
        long long it = 0;
        std::vector<double> g(static_cast<std::size_t>(n_));

        while (it < cfg_.max_iter) {
            ++it;
            form_.partials(w, g);
            std::vector<double> next;
            bool moved = step(kind, w, g, tau, eta, next);
            double tau_next = tau;
            if (moved) {
                if (reduced) {
                    block_project(next);
                    normalize(next);
                }
                tau_next = form_.value(next);
                if ((kind == StepKind::power || kind == StepKind::shifted_power) &&
                    tau_next < tau - 1e-14 * std::max(1.0, std::abs(tau))) {
                    // Power map lost monotonicity here; continue by gradient ascent.
                    kind = StepKind::sphere_gradient;
                    continue;
                }
            }
            double delta = 0.0;
            if (moved) {
                for (int i = 0; i < n_; ++i) delta = std::max(delta, std::abs(next[i] - w[i]));
                w = std::move(next);
                tau = tau_next;
            }
            const bool stalled = !moved || delta <= cfg_.tol_step;
            if (stalled || (delta < 1e-6 && it >= next_polish)) {
                long long newton_its = 0;
                if (polish(w, tau, newton_its)) {
                    out.iterations = it + newton_its;
                    out.converged = true;
                    break;
                }
                next_polish = it + polish_gap;
                polish_gap *= 2;
            }
            if (stalled) break;
        }
        if (!out.converged) out.iterations = it;
        out.tau = form_.value(w);
        bool boundary_ok = true;
        out.residual = residual(w, out.tau, boundary_ok);
        out.converged = out.residual <= cfg_.tol_kkt && boundary_ok;
        out.w = std::move(w);
        return out;
    }

private:
    // One exploration step. Returns false when no improving move was found.
    bool step(StepKind kind, const std::vector<double>& w, const std::vector<double>& g, double tau, double& eta,
              std::vector<double>& next) const {
        switch (kind) {
            case StepKind::power:
            case StepKind::shifted_power: {
                double sigma = 0.0;
                if (kind == StepKind::shifted_power) {
                    for (int i = 0; i < n_; ++i)
                        if (w[i] > 1e-300) sigma = std::max(sigma, g[i] / safe_pow(w[i], alpha_ - 1.0));
                }
                next.assign(static_cast<std::size_t>(n_), 0.0);
                double total = 0.0;
                for (int i = 0; i < n_; ++i) {
                    const double y = g[i] + sigma * safe_pow(w[i], alpha_ - 1.0);
                    next[i] = safe_pow(y, 1.0 / (alpha_ - 1.0));
                    total += next[i];
                }
                if (total <= 0.0) return false;
                normalize(next);
                return true;
            }
            case StepKind::sphere_gradient: {
                std::vector<double> d(static_cast<std::size_t>(n_));
                double gn = 0.0, nn = 0.0;
                for (int i = 0; i < n_; ++i) {
                    const double ni = safe_pow(w[i], alpha_ - 1.0);
                    gn += g[i] * ni;
                    nn += ni * ni;
                }
                const double coef = nn > 0.0 ? gn / nn : 0.0;
                double dmax = 0.0;
                for (int i = 0; i < n_; ++i) {
                    d[i] = g[i] - coef * safe_pow(w[i], alpha_ - 1.0);
                    dmax = std::max(dmax, std::abs(d[i]));
                }
                if (dmax <= 0.0) return false;
                if (eta <= 0.0) eta = 0.5 / dmax;
                for (int tries = 0; tries < 80; ++tries, eta *= 0.5) {
                    next.assign(static_cast<std::size_t>(n_), 0.0);
                    for (int i = 0; i < n_; ++i) next[i] = std::max(w[i] + eta * d[i], 0.0);
                    if (std::all_of(next.begin(), next.end(), [](double x) { return x == 0.0; })) continue;
                    normalize(next);
                    if (form_.value(next) > tau) {
                        eta = std::min(eta * 2.0, 1e6);
                        return true;
                    }
                }
                eta = 0.0;
                return false;
            }
            case StepKind::simplex_gradient: {
                double gmax = 0.0;
                for (double x : g) gmax = std::max(gmax, x);
                if (gmax <= 0.0) return false;
                if (eta <= 0.0) eta = 0.5 / gmax;
                for (int tries = 0; tries < 80; ++tries, eta *= 0.5) {
                    next.resize(static_cast<std::size_t>(n_));
                    for (int i = 0; i < n_; ++i) next[i] = w[i] + eta * g[i];
                    project_simplex(next);
                    if (form_.value(next) > tau) {
                        eta = std::min(eta * 2.0, 1e6);
                        return true;
                    }
                }
                eta = 0.0;
                return false;
            }
        }
        return false;
    }

    // Residual of the stationarity system restricted to `support`, with the
    // multiplier as an extra unknown.
    Eigen::VectorXd system_residual(const std::vector<double>& x, double lambda, const std::vector<int>& support) const {
        const auto m = static_cast<Eigen::Index>(support.size());
        Eigen::VectorXd r(m + 1);
        std::vector<double> g(static_cast<std::size_t>(n_));
        form_.partials(x, g);
        double mass = 0.0;
        for (Eigen::Index a = 0; a < m; ++a) {
            const int i = support[static_cast<std::size_t>(a)];
            r(a) = g[i] - lambda * safe_pow(x[i], alpha_ - 1.0);
            mass += safe_pow(x[i], alpha_);
        }
        r(m) = mass - 1.0;
        return r;
    }

    Eigen::MatrixXd system_jacobian(const std::vector<double>& x, double lambda, const std::vector<int>& support) const {
        const auto m = static_cast<Eigen::Index>(support.size());
        std::vector<int> pos(static_cast<std::size_t>(n_), -1);
        for (Eigen::Index a = 0; a < m; ++a) pos[support[static_cast<std::size_t>(a)]] = static_cast<int>(a);
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m + 1, m + 1);
        const auto k = static_cast<std::size_t>(k_);
        for (std::size_t e = 0; e < h_.size(); ++e) {
            auto edge = h_.edge(e);
            for (std::size_t p = 0; p < k; ++p) {
                const int a = pos[edge[p]];
                if (a < 0) continue;
                for (std::size_t q = 0; q < k; ++q) {
                    if (q == p) continue;
                    const int b = pos[edge[q]];
                    if (b < 0) continue;
                    double prod = km1_factorial_;
                    for (std::size_t s = 0; s < k; ++s)
                        if (s != p && s != q) prod *= x[edge[s]];
                    J(a, b) += prod;
                }
            }
        }
        for (Eigen::Index a = 0; a < m; ++a) {
            const double xi = x[support[static_cast<std::size_t>(a)]];
            if (alpha_ != 1.0) J(a, a) -= lambda * (alpha_ - 1.0) * safe_pow(xi, alpha_ - 2.0);
            J(a, m) = -safe_pow(xi, alpha_ - 1.0);
            J(m, a) = alpha_ * safe_pow(xi, alpha_ - 1.0);
        }
        return J;
    }

    // Newton refinement of an approximate maximizer on its numerical support.
    bool polish(std::vector<double>& w, double& tau, long long& iterations) const {
        const double wmax = *std::max_element(w.begin(), w.end());
        if (wmax <= 0.0) return false;
        for (double rel : {1e-7, 1e-5, 1e-3}) {
            std::vector<int> support;
            std::vector<double> x(static_cast<std::size_t>(n_), 0.0);
            for (int i = 0; i < n_; ++i) {
                if (w[i] > rel * wmax) {
                    support.push_back(i);
                    x[i] = w[i];
                }
            }
            normalize(x);
            double lambda = form_.value(x);
            Eigen::VectorXd r = system_residual(x, lambda, support);
            double rnorm = r.lpNorm<Eigen::Infinity>();
            for (int it = 0; it < 40 && rnorm > 1e-15 * std::max(1.0, lambda); ++it) {
                ++iterations;
                const Eigen::MatrixXd J = system_jacobian(x, lambda, support);
                const Eigen::VectorXd delta = J.completeOrthogonalDecomposition().solve(-r);
                double t = 1.0;
                bool accepted = false;
                for (int half = 0; half < 30; ++half, t *= 0.5) {
                    std::vector<double> y = x;
                    bool positive = true;
                    for (std::size_t a = 0; a < support.size(); ++a) {
                        y[support[a]] += t * delta(static_cast<Eigen::Index>(a));
                        if (!(y[support[a]] > 0.0)) positive = false;
                    }
                    if (!positive) continue;
                    const double lam = lambda + t * delta(static_cast<Eigen::Index>(support.size()));
                    Eigen::VectorXd ry = system_residual(y, lam, support);
                    const double ynorm = ry.lpNorm<Eigen::Infinity>();
                    if (ynorm < rnorm) {
                        x = std::move(y);
                        lambda = lam;
                        r = std::move(ry);
                        rnorm = ynorm;
                        accepted = true;
                        break;
                    }
                }
                if (!accepted) break;
                if (delta.lpNorm<Eigen::Infinity>() * t < 1e-16) break;
            }
            normalize(x);
            const double tau_x = form_.value(x);
            if (tau_x < tau - 1e-9 * std::max(1.0, std::abs(tau))) continue;
            bool boundary_ok = true;
            const double res = residual(x, tau_x, boundary_ok);
            if (res <= cfg_.tol_kkt && boundary_ok) {
                w = std::move(x);
                tau = tau_x;
                return true;
            }
        }
        return false;
    }

    const Hypergraph& h_;
    const AdjacencyForm& form_;
    const SolverConfig& cfg_;
    const SymmetryPartition& part_;
    int n_;
    int k_;
    double alpha_;
    double km1_factorial_;
};

std::vector<std::vector<Vertex>> components_with_edges(const Hypergraph& h) {
    std::vector<Vertex> parent(static_cast<std::size_t>(h.order()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t e = 0; e < h.size(); ++e) {
        auto edge = h.edge(e);
        for (std::size_t p = 1; p < edge.size(); ++p) parent[find(edge[p])] = find(edge[0]);
    }
    auto deg = h.degrees();
    std::vector<std::vector<Vertex>> comps;
    std::vector<int> slot(static_cast<std::size_t>(h.order()), -1);
    for (Vertex v = 0; v < static_cast<Vertex>(h.order()); ++v) {
        if (deg[v] == 0) continue;
        const Vertex r = find(v);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<std::size_t>(slot[r])].push_back(v);
    }
    return comps;
}

std::vector<Start> make_starts(const Hypergraph& h, const SolverConfig& cfg, const SymmetryPartition& part) {
    const auto n = static_cast<std::size_t>(h.order());
    std::vector<Start> starts;
    auto add = [&](std::string label, std::vector<double> w, bool reduced) {
        for (const auto& s : starts)
            if (s.reduced == reduced && s.w == w) return;
        starts.push_back({std::move(label), std::move(w), reduced});
    };
    auto indicator = [&](const std::vector<Vertex>& vs) {
        std::vector<double> w(n, 0.0);
        for (Vertex v : vs) w[v] = 1.0;
        return w;
    };

    add("uniform", std::vector<double>(n, 1.0), false);
    const bool reducible = part.block_count() < n;
    if (reducible) {
        std::vector<double> w(n);
        const double b = static_cast<double>(part.block_count());
        for (const auto& block : part.classes())
            for (Vertex v : block) w[v] = std::pow(1.0 / (b * static_cast<double>(block.size())), 1.0 / cfg.alpha);
        add("symmetric", std::move(w), true);
    }

    const auto comps = components_with_edges(h);
    for (std::size_t c = 0; c < comps.size(); ++c) add("component:" + std::to_string(c), indicator(comps[c]), false);

    // Closed neighbourhoods catch optima concentrated on a dense corner.
    std::vector<std::vector<Vertex>> nbhd(n);
    for (std::size_t e = 0; e < h.size(); ++e) {
        auto edge = h.edge(e);
        for (Vertex u : edge)
            for (Vertex v : edge) nbhd[u].push_back(v);
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (nbhd[v].empty()) continue;
        add("neighborhood:" + std::to_string(v), indicator(nbhd[v]), false);
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int r = 0; r < cfg.num_random_starts; ++r) {
        std::vector<double> w(n);
        for (double& x : w) x = unit(rng);
        add("random:" + std::to_string(r), std::move(w), false);
    }

    if (reducible) {
        const std::size_t full = starts.size();
        for (std::size_t s = 0; s < full; ++s) {
            if (starts[s].reduced) continue;
            add(starts[s].label + "/reduced", starts[s].w, true);
        }
    }
    return starts;
}

bool better(const Run& a, const Run& b) {
    if (a.tau > b.tau + 1e-12) return true;
    if (a.tau < b.tau - 1e-12) return false;
    return std::lexicographical_compare(b.w.begin(), b.w.end(), a.w.begin(), a.w.end());
}

}  // namespace

SpectralResult solve(const Hypergraph& h, const SolverConfig& cfg) {
    if (!(cfg.alpha >= 1.0) || !std::isfinite(cfg.alpha)) throw Error(Errc::bad_alpha, "alpha must be a finite real >= 1");
    if (!(cfg.tol_kkt > 0.0) || !(cfg.tol_step > 0.0)) throw Error(Errc::bad_params, "tolerances must be positive");
    if (cfg.max_iter < 1 || cfg.num_random_starts < 0) throw Error(Errc::bad_params, "bad iteration or start count");
    if (h.order() < 1) throw Error(Errc::bad_params, "solve needs at least one vertex");

    const auto n = static_cast<std::size_t>(h.order());
    const SymmetryPartition part = symmetry_partition(h);
    SpectralResult result;

    if (h.no_edges()) {
        result.lambda = 0.0;
        result.witness = WeightVector::normalized(cfg.alpha, std::vector<double>(n, 1.0));
        result.kkt_residual = 0.0;
        result.converged = true;
        result.start_label = "uniform";
        result.starts = 1;
        if (part.block_count() < n) result.reduced_lambda = 0.0;
        return result;
    }

    const AdjacencyForm form(h);
    const Optimizer opt(h, form, cfg, part);
    const auto starts = make_starts(h, cfg, part);
    std::vector<Run> runs(starts.size());
    detail::parallel_for(starts.size(), cfg.threads,
                         [&](std::size_t s) { runs[s] = opt.run(starts[s].w, starts[s].reduced); });

    std::size_t best = 0;
    for (std::size_t s = 1; s < runs.size(); ++s)
        if (better(runs[s], runs[best])) best = s;
    for (std::size_t s = 0; s < runs.size(); ++s) {
        if (!starts[s].reduced) continue;
        if (!result.reduced_lambda || runs[s].tau > *result.reduced_lambda) result.reduced_lambda = runs[s].tau;
    }

    const Run& win = runs[best];
    result.witness = WeightVector(cfg.alpha, win.w);
    result.lambda = tau_value(h, result.witness);
    result.kkt_residual = kkt_residual(h, result.witness, result.lambda);
    result.iterations = win.iterations;
    result.converged = win.converged && result.kkt_residual <= cfg.tol_kkt;
    result.start_label = starts[best].label;
    result.starts = static_cast<int>(starts.size());
    return result;
}

double deletion_bound(const Hypergraph& h, const SpectralResult& result, Vertex u) {
    if (u >= static_cast<Vertex>(h.order())) throw Error(Errc::vertex_range, "vertex " + std::to_string(u) + " is not below n");
    if (result.witness.size() != static_cast<std::size_t>(h.order()))
        throw Error(Errc::dimension_mismatch, "witness length differs from vertex count");
    const double a = result.witness.alpha();
    const double k = static_cast<double>(h.uniformity());
    const double mass = safe_pow(result.witness[u], a);
    if (mass >= 1.0 / k) throw Error(Errc::bound_void, "w_u^alpha >= 1/k");
    return std::pow(1.0 - mass, -k / a) * (1.0 - k * mass) * result.lambda;
}

}  // namespace hyperspec
