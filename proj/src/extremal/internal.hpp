#pragma once

#include <chrono>
#include <limits>
#include <vector>

#include "hyperspec/enumerate.hpp"
#include "hyperspec/extremal.hpp"

namespace hyperspec::detail {

struct Candidate {
    EdgeMask mask = 0;
    std::vector<int> ranks;
    int edges = 0;
    double lambda = 0.0;
    bool skip = false;
    bool solved = false;
    bool converged = false;
};

std::vector<int> ranks_of(EdgeMask m);
/// Lexicographic order on sorted rank lists.
bool ranks_less(const std::vector<int>& a, const std::vector<int>& b);

/// Upper bound (k! e)^(1 - 1/alpha); also valid at alpha = 1.
double lambda_upper(int k, long long e, double alpha);

void check_family(int k, const FamilySpec& family);

/// Canonical class representatives in enumeration order. `expand` prunes
/// subtrees as in enumerate_free_masks, `keep` filters visited nodes.
std::vector<Candidate> collect_classes(const EdgeIndex& idx, const FamilySpec& family, bool force,
                                       const SubtreeFilter& expand = {},
                                       const std::function<bool(EdgeMask)>& keep = {});

SolverConfig per_instance_config(const SearchOptions& opts, double alpha);

/// Solves every candidate not yet solved and not marked `skip`, in parallel.
void solve_all(const EdgeIndex& idx, std::vector<Candidate>& cands, const SolverConfig& cfg, int threads);

struct SpectralScan {
    std::vector<Candidate> cands;  // sorted by edges desc, then ranks
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    long long ties = 0;
    long long solved = 0;
    long long pruned = 0;
    long long unconverged = 0;
};

/// Maximum of lambda over `cands`, solving in fixed chunks and skipping
/// candidates whose edge bound cannot reach the incumbent.
SpectralScan scan_spectral(const EdgeIndex& idx, std::vector<Candidate> cands, double alpha, const SearchOptions& opts);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::chrono::duration<double> elapsed() const { return std::chrono::steady_clock::now() - start_; }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace hyperspec::detail
