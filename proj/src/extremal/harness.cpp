#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "extremal/internal.hpp"
#include "hyperspec/closed_forms.hpp"
#include "parallel.hpp"

namespace hyperspec {

using detail::Candidate;

namespace {

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

bool embeds_in_some(const Hypergraph& h, const std::vector<Hypergraph>& members) {
    for (const auto& g : members) {
        if (g.size() < h.size()) continue;
        if (is_subgraph_up_to_relabeling(h, g)) return true;
    }
    return false;
}

struct MemberLambda {
    double best = 0.0;
    std::size_t index = 0;
    long long unconverged = 0;
};

MemberLambda solve_members(const std::vector<Hypergraph>& members, double alpha, const SearchOptions& opts) {
    std::vector<SpectralResult> res(members.size());
    const SolverConfig cfg = detail::per_instance_config(opts, alpha);
    detail::parallel_for(members.size(), opts.threads, [&](std::size_t i) { res[i] = solve(members[i], cfg); });
    MemberLambda out;
    for (std::size_t i = 0; i < res.size(); ++i) {
        if (!res[i].converged) ++out.unconverged;
        if (i == 0 || res[i].lambda > out.best + lambda_tolerance) {
            out.best = res[i].lambda;
            out.index = i;
        }
    }
    return out;
}

void check_alpha(double alpha, bool strict) {
    if (!std::isfinite(alpha) || alpha < 1.0 || (strict && alpha == 1.0))
        throw Error(Errc::bad_alpha, strict ? "alpha must exceed 1" : "alpha must be at least 1");
}

}  // namespace

SearchReport check_universal(int k, int n, const FamilySpec& family, const UniversalFamilySpec& gset, int s, double c,
                             const SearchOptions& opts) {
    detail::Stopwatch clock;
    detail::check_family(k, family);
    if (!(c > 0.0)) throw Error(Errc::bad_params, "c must be positive");
    const auto exs = ex_s_number(k, n, family, s, opts);
    const double threshold = c * exs.optimum_value;
    const auto members = gset.generate(k, n, family, opts.force);
    const EdgeIndex idx(k, n);
    const long long per_edge = binomial(k, s);
    const long long s_sets = binomial(n, s);

    auto classes = detail::collect_classes(
        idx, family, opts.force,
        [&](EdgeMask m, int last) {
            if (s_sets == 0) return true;
            const long long cap = std::popcount(m) + idx.slots() - last - 1;
            return static_cast<double>(cap * per_edge / s_sets) > threshold;
        },
        [&](EdgeMask m) { return static_cast<double>(min_s_degree(idx.to_hypergraph(m), s)) > threshold; });

    std::vector<char> fits(classes.size(), 1);
    detail::parallel_for(classes.size(), opts.threads,
                         [&](std::size_t i) { fits[i] = embeds_in_some(idx.to_hypergraph(classes[i].mask), members); });

    SearchReport rep;
    rep.question = "universal";
    rep.n = n;
    rep.k = k;
    rep.optimum_value = exs.optimum_value;
    rep.witness = exs.witness;
    rep.witness_iso_class_count = exs.witness_iso_class_count;
    rep.verdict = Verdict::confirmed;
    long long failures = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (fits[i]) continue;
        if (failures++ == 0) rep.counterexample = idx.to_hypergraph(classes[i].mask);
        rep.verdict = Verdict::refuted;
    }
    rep.details.push_back({"s", static_cast<long long>(s)});
    rep.details.push_back({"c", c});
    rep.details.push_back({"gset", gset.label()});
    rep.details.push_back({"gset_members", static_cast<long long>(members.size())});
    rep.details.push_back({"threshold", threshold});
    rep.details.push_back({"classes_checked", static_cast<long long>(classes.size())});
    rep.details.push_back({"failures", failures});
    rep.wall_time = clock.elapsed();
    return rep;
}

SearchReport strongstab_check(int k, int n, const FamilySpec& family, const UniversalFamilySpec& gset, double alpha,
                              double c, const SearchOptions& opts) {
    detail::Stopwatch clock;
    detail::check_family(k, family);
    check_alpha(alpha, true);
    if (!(c > 0.0)) throw Error(Errc::bad_params, "c must be positive");
    const auto exr = ex_number(k, n, family, opts);
    const double ex = exr.optimum_value;
    const double kf = factorial(k);
    const auto members = gset.generate(k, n, family, opts.force);
    const auto g = solve_members(members, alpha, opts);
    const double lambda_g = members.empty() ? 0.0 : g.best;

    const double rhs = ex > 0.0 ? std::pow(lambda_g, alpha / (alpha - 1.0)) / (kf * ex)
                                : std::numeric_limits<double>::infinity();
    const bool inequality = c < rhs;
    const double embed_level = std::pow(c * kf * ex, (alpha - 1.0) / alpha);

    const EdgeIndex idx(k, n);
    auto classes = detail::collect_classes(idx, family, opts.force);
    // Classes whose edge bound already settles both conclusions need no solve.
    const double settle = std::min(lambda_g, embed_level) + lambda_tolerance;
    for (auto& cand : classes)
        if (detail::lambda_upper(k, cand.edges, alpha) <= settle) cand.skip = true;
    detail::solve_all(idx, classes, detail::per_instance_config(opts, alpha), opts.threads);

    std::vector<char> fits(classes.size(), 1);
    detail::parallel_for(classes.size(), opts.threads, [&](std::size_t i) {
        const auto& cand = classes[i];
        const bool needs_embed = static_cast<double>(cand.edges) > c * ex ||
                                 (cand.solved && cand.lambda > embed_level + lambda_tolerance);
        if (needs_embed) fits[i] = embeds_in_some(idx.to_hypergraph(cand.mask), members);
    });

    bool universal = true;
    long long c1_fail = 0, c2_fail = 0, solved = 0, unconverged = 0;
    double max_checked = 0.0;
    std::optional<Hypergraph> first1, first2;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& cand = classes[i];
        if (static_cast<double>(cand.edges) > c * ex && !fits[i]) universal = false;
        if (!cand.solved) continue;
        ++solved;
        if (!cand.converged) ++unconverged;
        max_checked = std::max(max_checked, cand.lambda);
        if (cand.lambda > lambda_g + lambda_tolerance && c1_fail++ == 0) first1 = idx.to_hypergraph(cand.mask);
        if (cand.lambda > embed_level + lambda_tolerance && !fits[i] && c2_fail++ == 0)
            first2 = idx.to_hypergraph(cand.mask);
    }

    SearchReport rep;
    rep.question = "strongstab";
    rep.n = n;
    rep.k = k;
    rep.alpha = alpha;
    rep.optimum_value = lambda_g;
    if (!members.empty()) rep.witness = members[g.index];
    rep.witness_iso_class_count = static_cast<long long>(members.size());
    rep.counterexample = first1 ? first1 : first2;
    const bool conclusions = c1_fail == 0 && c2_fail == 0;
    if (!inequality)
        rep.verdict = Verdict::indeterminate;
    else if (conclusions)
        rep.verdict = Verdict::confirmed;
    else
        rep.verdict = universal ? Verdict::refuted : Verdict::indeterminate;

    rep.details.push_back({"c", c});
    rep.details.push_back({"gset", gset.label()});
    rep.details.push_back({"ex", static_cast<long long>(ex)});
    rep.details.push_back({"hypothesis_bound", rhs});
    rep.details.push_back({"hypothesis", std::string(inequality ? "holds" : "fails")});
    rep.details.push_back({"universal", universal});
    rep.details.push_back({"embed_level", embed_level});
    rep.details.push_back({"conclusion_lambda", std::string(c1_fail == 0 ? "holds" : "fails")});
    rep.details.push_back({"conclusion_embedding", std::string(c2_fail == 0 ? "holds" : "fails")});
    rep.details.push_back({"max_lambda_checked", max_checked});
    rep.details.push_back({"classes", static_cast<long long>(classes.size())});
    rep.details.push_back({"solved", solved});
    rep.details.push_back({"unconverged", unconverged + g.unconverged});
    rep.wall_time = clock.elapsed();
    return rep;
}

DensityTable density_report(int k, const FamilySpec& family, int n_lo, int n_hi, double alpha, double pi,
                            const UniversalFamilySpec& gset, const SearchOptions& opts) {
    detail::Stopwatch clock;
    detail::check_family(k, family);
    check_alpha(alpha, false);
    if (n_lo < 1 || n_hi < n_lo) throw Error(Errc::bad_params, "need 1 <= n_lo <= n_hi");
    if (!(pi >= 0.0) || !std::isfinite(pi)) throw Error(Errc::bad_params, "pi must be finite and >= 0");
    DensityTable table;
    table.k = k;
    table.alpha = alpha;
    table.pi = pi;
    const double kf = factorial(k);
    for (int n = n_lo; n <= n_hi; ++n) {
        DensityRow row;
        row.n = n;
        try {
            row.ex = static_cast<long long>(ex_number(k, n, family, opts).optimum_value);
            row.ex_prev = n - 1 >= 1 ? static_cast<long long>(ex_number(k, n - 1, family, opts).optimum_value) : 0;
            const auto members = gset.generate(k, n, family, opts.force);
            const auto g = solve_members(members, alpha, opts);
            row.lambda_g = members.empty() ? 0.0 : g.best;
            row.lambda_converged = g.unconverged == 0;
        } catch (const Error& e) {
            if (e.code() != Errc::search_too_large) throw;
            row.skipped = true;
            row.skip_reason = "SearchTooLarge";
            table.rows.push_back(row);
            continue;
        }
        const double nd = n;
        row.ex_diff = row.ex - row.ex_prev;
        row.pi_term = pi * static_cast<double>(binomial(n, k - 1));
        row.residual1 = static_cast<double>(row.ex_diff) - row.pi_term;
        row.residual1_norm = row.residual1 / std::pow(nd, k - 1);
        row.target = kf * static_cast<double>(row.ex) * std::pow(nd, -k / alpha);
        row.residual2 = row.lambda_g - row.target;
        row.residual2_norm = row.residual2 / std::pow(nd, k - k / alpha - 1.0);
        row.mu_ratio = pi > 0.0 ? row.lambda_g / (pi * std::pow(nd, k - k / alpha))
                                : std::numeric_limits<double>::infinity();
        table.rows.push_back(row);
    }
    table.wall_time = clock.elapsed();
    return table;
}

SearchReport colex_conjecture_check(int k, long long m, int n, double alpha, const SearchOptions& opts) {
    detail::Stopwatch clock;
    check_alpha(alpha, false);
    if (k < 1 || n < k) throw Error(Errc::bad_params, "need 1 <= k <= n");
    if (m < 1 || m > binomial(n, k)) throw Error(Errc::bad_params, "need 1 <= m <= C(n,k)");
    check_search_guard(k, n, opts.force);
    const Hypergraph seg = colex_segment(k, m);
    const Hypergraph colex = add_isolated(seg, n - seg.order());
    const SolverConfig cfg = detail::per_instance_config(opts, alpha);
    const auto colex_res = solve(colex, cfg);

    const EdgeIndex idx(k, n);
    auto classes = detail::collect_classes(
        idx, FamilySpec{}, opts.force,
        [&](EdgeMask mask, int last) {
            const long long e = std::popcount(mask);
            return e < m && e + idx.slots() - last - 1 >= m;
        },
        [&](EdgeMask mask) { return std::popcount(mask) == m; });
    detail::solve_all(idx, classes, cfg, opts.threads);

    const EdgeMask colex_mask = canonical_mask(idx, idx.mask_of(colex));
    double best = colex_res.lambda;
    long long ties = 0, unconverged = colex_res.converged ? 0 : 1;
    for (const auto& cand : classes) {
        if (!cand.converged) ++unconverged;
        best = std::max(best, cand.lambda);
    }
    std::size_t best_i = classes.size();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].lambda < best - lambda_tolerance) continue;
        if (best_i == classes.size() || detail::ranks_less(classes[i].ranks, classes[best_i].ranks)) best_i = i;
    }
    for (const auto& cand : classes)
        if (cand.lambda >= colex_res.lambda - lambda_tolerance) ++ties;

    SearchReport rep;
    rep.question = "colex";
    rep.n = n;
    rep.k = k;
    rep.alpha = alpha;
    rep.optimum_value = best;
    rep.witness = colex;
    rep.witness_iso_class_count = ties;
    const bool beaten = best_i < classes.size() && classes[best_i].mask != colex_mask &&
                        classes[best_i].lambda > colex_res.lambda + lambda_tolerance;
    if (beaten) {
        rep.verdict = Verdict::refuted;
        rep.counterexample = idx.to_hypergraph(classes[best_i].mask);
    } else {
        rep.verdict = Verdict::confirmed;
    }
    rep.details.push_back({"m", m});
    rep.details.push_back({"colex_lambda", colex_res.lambda});
    rep.details.push_back({"colex_converged", colex_res.converged});
    rep.details.push_back({"classes", static_cast<long long>(classes.size())});
    rep.details.push_back({"unconverged", unconverged});
    rep.wall_time = clock.elapsed();
    return rep;
}

SearchReport ekr_check(int k, int t, int n, double alpha, const SearchOptions& opts) {
    detail::Stopwatch clock;
    check_alpha(alpha, false);
    if (t < 1 || t >= k) throw Error(Errc::bad_params, "need 1 <= t < k");
    if (n < k) throw Error(Errc::bad_params, "need n >= k");
    check_search_guard(k, n, opts.force);
    const FamilySpec family = intersecting_family(k, t);
    const EdgeIndex idx(k, n);
    auto scan = detail::scan_spectral(idx, detail::collect_classes(idx, family, opts.force), alpha, opts);
    const Hypergraph st = star(k, t, n);
    const EdgeMask star_mask = canonical_mask(idx, idx.mask_of(st));
    const double star_cf = star_lambda(k, t, n, alpha).lambda;

    double star_solved = 0.0;
    bool star_max = false;
    std::optional<std::size_t> rival;
    for (std::size_t i = 0; i < scan.cands.size(); ++i) {
        const auto& cand = scan.cands[i];
        const bool tie = cand.solved && cand.lambda >= scan.best - lambda_tolerance;
        if (cand.mask == star_mask) {
            star_solved = cand.lambda;
            star_max = tie;
        } else if (tie && (!rival || detail::ranks_less(cand.ranks, scan.cands[*rival].ranks))) {
            rival = i;
        }
    }

    SearchReport rep;
    rep.question = "ekr";
    rep.n = n;
    rep.k = k;
    rep.alpha = alpha;
    rep.optimum_value = scan.best;
    rep.witness = idx.to_hypergraph(scan.cands[scan.best_index].mask);
    rep.witness_iso_class_count = scan.ties;
    const bool unique = star_max && !rival;
    rep.verdict = unique ? Verdict::confirmed : Verdict::refuted;
    if (!unique && rival) rep.counterexample = idx.to_hypergraph(scan.cands[*rival].mask);
    rep.details.push_back({"t", static_cast<long long>(t)});
    rep.details.push_back({"star_lambda", star_cf});
    rep.details.push_back({"star_lambda_solved", star_solved});
    rep.details.push_back({"star_is_maximizer", star_max});
    rep.details.push_back({"star_unique", unique});
    rep.details.push_back({"classes", static_cast<long long>(scan.cands.size())});
    rep.details.push_back({"pruned", scan.pruned});
    rep.details.push_back({"unconverged", scan.unconverged});
    rep.wall_time = clock.elapsed();
    return rep;
}

}  // namespace hyperspec
