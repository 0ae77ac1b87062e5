#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wikinav/graph.hpp"
#include "wikinav/transition.hpp"

namespace wikinav {

// Shares of each partition's topic-directed out-links that stay within the
// partition vs. cross to the other one. Denominator: links from the
// partition into P∪PBAR. Empty when a partition has no topic-directed links.
struct BlockFractions {
    std::optional<double> p_within;
    std::optional<double> p_across;
    std::optional<double> pbar_within;
    std::optional<double> pbar_across;
};

BlockFractions block_fractions(const TopicInducedNetwork& g);

struct RewiredSample {
    TopicInducedNetwork graph;
    std::int64_t swaps_attempted = 0;
    std::int64_t swaps_performed = 0;
    std::uint64_t seed = 0;
};

// Degree-preserving randomization by repeated directed double-edge swaps:
// (a,b),(c,d) -> (a,d),(c,b), skipping swaps that would create a self-loop
// or duplicate edge. Every node keeps its exact in- and out-degree and its
// label; edge attributes are dropped. 10x|E| attempts is a reasonable
// default for mixing.
RewiredSample degree_preserving_rewire(const TopicInducedNetwork& g, std::int64_t swaps,
                                       std::uint64_t seed);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation (n-1); 0 for single sample
};

struct ExpectedFractions {
    std::optional<MeanSd> p_within;
    std::optional<MeanSd> p_across;
    std::optional<MeanSd> pbar_within;
    std::optional<MeanSd> pbar_across;
    int samples = 0;
};

// Monte Carlo estimate of block fractions under the degree-preserving null
// model. Per-sample RNG streams derive from (seed, sample index).
ExpectedFractions expected_random_fractions(const TopicInducedNetwork& g, int samples,
                                            std::int64_t swaps, std::uint64_t seed,
                                            unsigned threads = 0);

struct AcrossLinkStats {
    double node_fraction = 0.0;               // share of partition nodes with >=1 across-link
    std::optional<double> mean_links_per_node;  // among those nodes; empty if none
};

AcrossLinkStats across_link_node_fraction(const TopicInducedNetwork& g, NodeLabel source);

// Total across-partition transition probability per source-partition node,
// in ascending node-id order.
std::vector<double> across_weight_distribution(const TopicInducedNetwork& g,
                                               const TransitionMatrix& m, NodeLabel source);

// (external - internal) / (external + internal) over v's out-edges, where
// internal edges stay in v's label class. Edges to the SUPER node are an
// aggregation artifact and are excluded from the universe. Empty when v has
// no counted edges.
std::optional<double> ei_homophily(const TopicInducedNetwork& g, NodeId v);

// Sample Pearson correlation; empty when either side has zero variance or
// fewer than two points.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

enum class TestDirection : std::uint8_t { FirstHigher, SecondHigher, Equal };

struct TestResult {
    double p_value = 1.0;
    double t_statistic = 0.0;  // Welch t on the observed samples
    TestDirection direction = TestDirection::Equal;
    bool significant = false;
    double alpha = 0.05;
};

// Bootstrap Welch test: both samples are resampled with replacement B times,
// the Welch t statistic is computed per replicate, and the p-value is the
// two-sided empirical tail of the replicate statistics against 0. A p of 0
// means "below 1/B resolution". Empty when both samples are degenerate
// (zero variance, equal means).
std::optional<TestResult> bootstrap_welch_test(std::span<const double> a,
                                               std::span<const double> b, int replicates,
                                               std::uint64_t seed, double alpha = 0.05);

// Per-node out-link counts from `from`-labeled nodes into `to`-labeled
// nodes, ascending node-id order, zeros included. Feeds the link-imbalance
// tests between the neighborhood and the partitions.
std::vector<double> link_count_samples(const TopicInducedNetwork& g, NodeLabel from,
                                       NodeLabel to);

}  // namespace wikinav
