#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "wikinav/graph.hpp"
#include "wikinav/transition.hpp"

namespace wikinav {

// NOTE: this process is defined on probability distributions, not on
// individual walkers. Each step deflates the transition matrix by the
// aggregate visit distribution of the *whole* population, which couples
// every path through the shared matrix. Simulating independent agents and
// averaging their paths is NOT an equivalent computation and must not be
// used as an oracle for it.

struct StartDistribution {
    std::vector<double> probabilities;
};

// Validates non-negativity and unit mass (1e-12, compensated summation).
StartDistribution make_start(std::vector<double> probabilities);

// 1/|label set| on each member of the label set.
StartDistribution uniform_start(const TopicInducedNetwork& g, NodeLabel label);

// All mass on a single node.
StartDistribution indicator_start(const TopicInducedNetwork& g, NodeId v);

// Uniform over a with-replacement sample: each draw carries weight 1/draws,
// duplicates stack.
StartDistribution multiset_start(std::size_t node_count, std::span<const NodeId> draws);

struct NavigationConfig {
    double alpha = 0.0;            // restart parameter in [0,1]
    int max_clicks = 10;           // session length L >= 1
    CwpSpec cwp{};
    double convergence_tol = 1e-8;
    int max_convergence_iters = 10000;
    // Off: the matrix stays fixed and the process reduces to a plain
    // restart walk. Exists for baselines and cross-checks.
    bool deflate = true;
};

void validate(const NavigationConfig& cfg);

// Distributions after 0..L clicks; steps[l] is the state after l clicks.
struct Trajectory {
    std::vector<std::vector<double>> steps;
    NavigationConfig config;

    int length() const { return static_cast<int>(steps.size()) - 1; }
    std::span<const double> at(int l) const;
};

// Scales column j by 1/(1 + pi_prev[j]) and renormalizes every non-empty
// row; already-visited destinations lose probability. The sparsity pattern
// is unchanged.
TransitionMatrix deflate_update(const TransitionMatrix& m, std::span<const double> pi_prev);

// Evolves the session process for cfg.max_clicks steps:
//   pi[1]   = pi[0] * M0
//   pi[l+1] = (1-alpha) * pi[l] * Ml + alpha * (pi[0] * Ml)
// where Ml = deflate_update(M(l-1), pi[l-1]); the deflation is cumulative.
Trajectory evolve(const TransitionMatrix& m0, const StartDistribution& start,
                  const NavigationConfig& cfg);

struct ConvergenceResult {
    std::vector<double> final_distribution;
    int steps = 0;
    bool converged = false;  // reported as status, never an error
    double last_delta = 0.0;
};

// Same recursion, iterated until the L1 step delta drops below
// cfg.convergence_tol or cfg.max_convergence_iters is exhausted.
ConvergenceResult evolve_to_convergence(const TransitionMatrix& m0,
                                        const StartDistribution& start,
                                        const NavigationConfig& cfg);

// `step \t node \t prob`; probabilities below 1e-15 are omitted.
void write_trajectory_tsv(const Trajectory& t, std::ostream& out);

}  // namespace wikinav
