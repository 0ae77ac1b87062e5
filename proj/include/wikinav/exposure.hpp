#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wikinav/graph.hpp"
#include "wikinav/navigation.hpp"
#include "wikinav/transition.hpp"

namespace wikinav {

// Probability mass on `target` after `step` clicks (1 <= step <= L).
double exdin(const Trajectory& t, std::span<const NodeId> target, int step);

// Per-set mass for pairwise-disjoint target sets; sums to the union's
// exposure by construction.
std::vector<double> exdin_multiset(const Trajectory& t,
                                   const std::vector<std::vector<NodeId>>& targets, int step);

// min/max of two directed exposures; 0 whenever either side is 0.
double mutual_exposure(double e_pq, double e_qp);

// Mass on `across` divided by mass on `within` at `step`; empty when the
// denominator is zero.
std::optional<double> exposure_ratio(const Trajectory& t, std::span<const NodeId> across,
                                     std::span<const NodeId> within, int step);

struct AdjustedExposure {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int replicates = 0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    int step = 1;
    std::vector<double> replicate_values;  // in replicate order
};

struct AdjustedExposurePair {
    AdjustedExposure p_to_pbar;
    AdjustedExposure pbar_to_p;
};

// Size-adjusted bootstrap exposure: each replicate draws with replacement
// z = min(|P|,|PBAR|) nodes per side, starts uniformly over the P sample
// (duplicates weighted by multiplicity), evolves, and sums mass over the
// PBAR sample draws; symmetrically for the reverse direction on the same
// replicate sample. Mean and equal-tailed percentile interval at level
// gamma come from the replicate values. Deterministic given the seed,
// independent of threading.
AdjustedExposurePair adjusted_exdin(const TopicInducedNetwork& g, const TransitionMatrix& m0,
                                    const NavigationConfig& cfg, int step, int replicates,
                                    double gamma, std::uint64_t seed, unsigned threads = 0);

// Exposure of a session starting deterministically at `start`.
double per_node_exposure(const TopicInducedNetwork& g, const TransitionMatrix& m0,
                         const NavigationConfig& cfg, NodeId start,
                         std::span<const NodeId> target, int step);

// Linear-interpolation empirical quantile of a sample (exposed for reuse by
// report code and tests).
double sample_quantile(std::vector<double> values, double q);

}  // namespace wikinav
