#pragma once

// Exhaustive small-n searches over F-free k-graphs: Turan numbers, minimum
// s-degree versions, spectral maxima, universality of candidate extremal
// families, and a few conjecture checks. Everything runs over isomorphism
// classes produced by enumerate_free, so C(n,k) must pass the search guard.

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/spectral.hpp"

namespace hyperspec {

enum class Verdict { confirmed, refuted, indeterminate };

const char* to_string(Verdict v) noexcept;

struct Detail {
    std::string key;
    std::variant<bool, long long, double, std::string> value;
};

struct SearchReport {
    std::string question;
    int n = 0;
    int k = 0;
    std::optional<double> alpha;
    double optimum_value = 0.0;
    std::optional<Hypergraph> witness;
    long long witness_iso_class_count = 0;
    Verdict verdict = Verdict::indeterminate;
    std::optional<Hypergraph> counterexample;
    std::chrono::duration<double> wall_time{};
    /// Query-specific values, in output order.
    std::vector<Detail> details;

    const Detail* find(const std::string& key) const;
};

/// Candidate extremal families G_n. Only maximal members are generated.
class UniversalFamilySpec {
public:
    enum class Kind { complete_multipartite, two_colorable, stars, explicit_list, all_free };

    /// Complete r-partite k-graphs (edges meet k distinct parts), one per
    /// multiset of part sizes.
    static UniversalFamilySpec complete_multipartite(int r);
    /// All k-sets meeting both sides, one per bipartition size.
    static UniversalFamilySpec two_colorable();
    static UniversalFamilySpec stars(int k, int t);
    static UniversalFamilySpec explicit_list(std::vector<Hypergraph> members);
    /// Every F-free k-graph on n vertices (up to isomorphism).
    static UniversalFamilySpec all_free();

    Kind kind() const noexcept { return kind_; }
    std::string label() const;
    std::vector<Hypergraph> generate(int k, int n, const FamilySpec& family, bool force = false) const;

private:
    Kind kind_ = Kind::explicit_list;
    int r_ = 2;
    int k_ = 2;
    int t_ = 1;
    std::vector<Hypergraph> members_;
};

struct SearchOptions {
    bool force = false;
    int threads = 1;
    /// Edge-bound pruning in spectral_max.
    bool prune = true;
    /// Solver settings; alpha is overridden per query.
    SolverConfig solver;
};

/// Tolerance for comparing lambda values in verdicts and ties.
inline constexpr double lambda_tolerance = 1e-8;

SearchReport ex_number(int k, int n, const FamilySpec& family, const SearchOptions& opts = {});
SearchReport ex_s_number(int k, int n, const FamilySpec& family, int s, const SearchOptions& opts = {});
SearchReport spectral_max(int k, int n, const FamilySpec& family, double alpha, const SearchOptions& opts = {});

/// Does every F-free H with delta_s(H) > c * ex_s(n,F) sit inside (up to
/// relabeling) some member of the candidate family?
SearchReport check_universal(int k, int n, const FamilySpec& family, const UniversalFamilySpec& gset, int s, double c,
                             const SearchOptions& opts = {});

/// Checks the two conclusions of the spectral stability statement for G_n:
/// lambda(H) <= lambda(G_n) for all F-free H, and H embeds in G_n whenever
/// lambda(H) > (c k! ex)^((alpha-1)/alpha). Verdict is indeterminate when
/// c < lambda(G_n)^(alpha/(alpha-1)) / (k! ex) fails, or when a conclusion
/// fails while G_n is not (F,n,0,c)-universal.
SearchReport strongstab_check(int k, int n, const FamilySpec& family, const UniversalFamilySpec& gset, double alpha,
                              double c, const SearchOptions& opts = {});

struct DensityRow {
    int n = 0;
    bool skipped = false;
    std::string skip_reason;
    long long ex = 0;
    long long ex_prev = 0;
    long long ex_diff = 0;
    double pi_term = 0.0;        // pi * C(n, k-1)
    double residual1 = 0.0;      // ex_diff - pi_term
    double residual1_norm = 0.0; // residual1 / n^(k-1)
    double lambda_g = 0.0;
    bool lambda_converged = true;
    double target = 0.0;         // k! ex n^(-k/alpha)
    double residual2 = 0.0;      // lambda_g - target
    double residual2_norm = 0.0; // residual2 / n^(k - k/alpha - 1)
    double mu_ratio = 0.0;       // lambda_g / (pi n^(k - k/alpha)); inf when pi = 0
};

struct DensityTable {
    int k = 0;
    double alpha = 0.0;
    double pi = 0.0;
    std::vector<DensityRow> rows;
    std::chrono::duration<double> wall_time{};
};

DensityTable density_report(int k, const FamilySpec& family, int n_lo, int n_hi, double alpha, double pi,
                            const UniversalFamilySpec& gset, const SearchOptions& opts = {});

/// Is the first-m colex segment (padded to n vertices) a maximizer of lambda
/// among all m-edge k-graphs on n vertices?
SearchReport colex_conjecture_check(int k, long long m, int n, double alpha, const SearchOptions& opts = {});

/// Maximizes lambda over t-intersecting k-graphs on n vertices and reports
/// whether the t-star is the unique maximizer.
SearchReport ekr_check(int k, int t, int n, double alpha, const SearchOptions& opts = {});

// Names used on the command line -------------------------------------------

/// Comma-separated list of K3, K4, Kr:<r>, K:<k>:<t>, fano, F5, 2K2,
/// intersect:<k>:<t>. Throws Error{bad_params} on unknown names.
FamilySpec parse_family_names(const std::string& names);
/// bipartite, multipartite:<r>, two-colorable, star:<k>:<t>, all-free.
UniversalFamilySpec parse_gset_name(const std::string& name);

/// Fixed-point rendering used by every report (10 digits after the point).
std::string format_real(double v);
/// `key=value` lines for a report, without the query flags.
std::vector<std::pair<std::string, std::string>> report_fields(const SearchReport& r);
std::string render_detail(const Detail& d);

}  // namespace hyperspec
