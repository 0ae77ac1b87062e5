#include "wikinav/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "wikinav/errors.hpp"
#include "wikinav/numeric.hpp"
#include "wikinav/parallel.hpp"
#include "wikinav/rng.hpp"

namespace wikinav {

namespace {

void require_partition(NodeLabel l) {
    if (l != NodeLabel::P && l != NodeLabel::PBar)
        throw ConfigError(std::string("expected a partition label, got ") + to_string(l));
}

NodeLabel other_partition(NodeLabel l) {
    return l == NodeLabel::P ? NodeLabel::PBar : NodeLabel::P;
}

MeanSd mean_sd(std::span<const double> xs) {
    MeanSd out;
    const double n = static_cast<double>(xs.size());
    out.mean = compensated_sum(xs) / n;
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / (n - 1.0));
    return out;
}

double sample_variance(std::span<const double> xs, double mean) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / (static_cast<double>(xs.size()) - 1.0);
}

// Welch t; +/-inf when the pooled variance term vanishes but means differ,
// 0 when both vanish with equal means.
double welch_t(std::span<const double> a, std::span<const double> b) {
    const double ma = compensated_sum(a) / static_cast<double>(a.size());
    const double mb = compensated_sum(b) / static_cast<double>(b.size());
    const double va = sample_variance(a, ma);
    const double vb = sample_variance(b, mb);
    const double denom =
        std::sqrt(va / static_cast<double>(a.size()) + vb / static_cast<double>(b.size()));
    const double diff = ma - mb;
    if (denom == 0.0) {
        if (diff == 0.0) return 0.0;
        return diff > 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    }
    return diff / denom;
}

}  // namespace

BlockFractions block_fractions(const TopicInducedNetwork& g) {
    const BlockEdgeCounts counts = block_edge_counts(g);
    BlockFractions out;
    const auto pp = static_cast<double>(counts.count(NodeLabel::P, NodeLabel::P));
    const auto pq = static_cast<double>(counts.count(NodeLabel::P, NodeLabel::PBar));
    const auto qq = static_cast<double>(counts.count(NodeLabel::PBar, NodeLabel::PBar));
    const auto qp = static_cast<double>(counts.count(NodeLabel::PBar, NodeLabel::P));
    if (pp + pq > 0.0) {
        out.p_within = pp / (pp + pq);
        out.p_across = pq / (pp + pq);
    }
    if (qq + qp > 0.0) {
        out.pbar_within = qq / (qq + qp);
        out.pbar_across = qp / (qq + qp);
    }
    return out;
}

RewiredSample degree_preserving_rewire(const TopicInducedNetwork& g, std::int64_t swaps,
                                       std::uint64_t seed) {
    if (swaps < 0) throw ConfigError("swap count must be non-negative");
    const std::size_t m = g.edge_count();

    std::vector<NodeId> src(m);
    std::vector<NodeId> dst(m);
    std::unordered_set<std::uint64_t> present;
    present.reserve(m * 2);
    auto key = [](NodeId a, NodeId b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    {
        std::size_t idx = 0;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            for (NodeId w : g.out_neighbors(v)) {
                src[idx] = v;
                dst[idx] = w;
                present.insert(key(v, w));
                ++idx;
            }
        }
    }

    std::int64_t performed = 0;
    Rng rng(seed);
    if (m >= 2) {
        for (std::int64_t s = 0; s < swaps; ++s) {
            const std::size_t e1 = static_cast<std::size_t>(rng.bounded(m));
            const std::size_t e2 = static_cast<std::size_t>(rng.bounded(m));
            if (e1 == e2) continue;
            const NodeId a = src[e1], b = dst[e1];
            const NodeId c = src[e2], d = dst[e2];
            if (a == d || c == b) continue;
            if (present.count(key(a, d)) || present.count(key(c, b))) continue;
            present.erase(key(a, b));
            present.erase(key(c, d));
            present.insert(key(a, d));
            present.insert(key(c, b));
            dst[e1] = d;
            dst[e2] = b;
            ++performed;
        }
    }

    NetworkBuilder builder;
    builder.set_meta(g.meta());
    for (NodeId v = 0; v < g.node_count(); ++v) builder.add_node(g.name(v), g.label(v));
    for (std::size_t i = 0; i < m; ++i) builder.add_edge(src[i], dst[i]);
    return RewiredSample{builder.build(/*check_super_adjacency=*/false), swaps, performed, seed};
}

ExpectedFractions expected_random_fractions(const TopicInducedNetwork& g, int samples,
                                            std::int64_t swaps, std::uint64_t seed,
                                            unsigned threads) {
    if (samples < 1) throw ConfigError("need at least one null-model sample");

    std::vector<BlockFractions> collected(static_cast<std::size_t>(samples));
    parallel_for(
        static_cast<std::size_t>(samples),
        [&](std::size_t i) {
            const auto rewired = degree_preserving_rewire(g, swaps, derive_stream_seed(seed, i));
            collected[i] = block_fractions(rewired.graph);
        },
        threads);

    ExpectedFractions out;
    out.samples = samples;
    auto summarize = [&](auto member) -> std::optional<MeanSd> {
        std::vector<double> values;
        values.reserve(collected.size());
        for (const auto& f : collected) {
            const auto& v = f.*member;
            if (v) values.push_back(*v);
        }
        if (values.empty()) return std::nullopt;
        return mean_sd(values);
    };
    out.p_within = summarize(&BlockFractions::p_within);
    out.p_across = summarize(&BlockFractions::p_across);
    out.pbar_within = summarize(&BlockFractions::pbar_within);
    out.pbar_across = summarize(&BlockFractions::pbar_across);
    return out;
}

AcrossLinkStats across_link_node_fraction(const TopicInducedNetwork& g, NodeLabel source) {
    require_partition(source);
    const NodeLabel target = other_partition(source);
    const auto members = g.nodes_in(source);
    if (members.empty()) throw DataError("partition has no nodes");

    std::size_t connected = 0;
    std::int64_t across_links = 0;
    for (NodeId v : members) {
        std::int64_t links = 0;
        for (NodeId w : g.out_neighbors(v))
            if (g.label(w) == target) ++links;
        if (links > 0) {
            ++connected;
            across_links += links;
        }
    }
    AcrossLinkStats out;
    out.node_fraction = static_cast<double>(connected) / static_cast<double>(members.size());
    if (connected > 0)
        out.mean_links_per_node =
            static_cast<double>(across_links) / static_cast<double>(connected);
    return out;
}

std::vector<double> across_weight_distribution(const TopicInducedNetwork& g,
                                               const TransitionMatrix& m, NodeLabel source) {
    require_partition(source);
    if (m.dim() != g.node_count()) throw DataError("matrix dimension does not match network");
    const NodeLabel target = other_partition(source);
    std::vector<double> out;
    for (NodeId v : g.nodes_in(source)) {
        const auto cols = m.row_cols(v);
        const auto values = m.row_values(v);
        double w = 0.0;
        for (std::size_t k = 0; k < cols.size(); ++k)
            if (g.label(cols[k]) == target) w += values[k];
        out.push_back(w);
    }
    return out;
}

std::optional<double> ei_homophily(const TopicInducedNetwork& g, NodeId v) {
    const NodeLabel own = g.label(v);
    if (own == NodeLabel::Super) return std::nullopt;
    std::int64_t internal = 0;
    std::int64_t external = 0;
    for (NodeId w : g.out_neighbors(v)) {
        const NodeLabel l = g.label(w);
        if (l == NodeLabel::Super) continue;
        if (l == own) {
            ++internal;
        } else {
            ++external;
        }
    }
    if (internal + external == 0) return std::nullopt;
    return static_cast<double>(external - internal) / static_cast<double>(external + internal);
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DataError("correlation inputs must have equal length");
    if (xs.size() < 2) return std::nullopt;
    const double n = static_cast<double>(xs.size());
    const double mx = compensated_sum(xs) / n;
    const double my = compensated_sum(ys) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

std::optional<TestResult> bootstrap_welch_test(std::span<const double> a,
                                               std::span<const double> b, int replicates,
                                               std::uint64_t seed, double alpha) {
    if (a.size() < 2 || b.size() < 2)
        throw DataError("both samples need at least two observations");
    if (replicates < 1) throw ConfigError("need at least one bootstrap replicate");

    const double observed_t = welch_t(a, b);
    const double ma = compensated_sum(a) / static_cast<double>(a.size());
    const double mb = compensated_sum(b) / static_cast<double>(b.size());
    const double va = sample_variance(a, ma);
    const double vb = sample_variance(b, mb);
    if (va == 0.0 && vb == 0.0) return std::nullopt;

    std::int64_t non_positive = 0;
    std::int64_t non_negative = 0;
    std::vector<double> ra(a.size());
    std::vector<double> rb(b.size());
    Rng rng(seed);
    for (int r = 0; r < replicates; ++r) {
        for (std::size_t i = 0; i < a.size(); ++i) ra[i] = a[rng.bounded(a.size())];
        for (std::size_t i = 0; i < b.size(); ++i) rb[i] = b[rng.bounded(b.size())];
        const double t = welch_t(ra, rb);
        if (t <= 0.0) ++non_positive;
        if (t >= 0.0) ++non_negative;
    }

    TestResult out;
    out.alpha = alpha;
    out.t_statistic = observed_t;
    const double tail =
        static_cast<double>(std::min(non_positive, non_negative)) / static_cast<double>(replicates);
    out.p_value = std::min(1.0, 2.0 * tail);
    out.direction = ma > mb    ? TestDirection::FirstHigher
                    : mb > ma ? TestDirection::SecondHigher
                              : TestDirection::Equal;
    out.significant = out.p_value < alpha;
    return out;
}

std::vector<double> link_count_samples(const TopicInducedNetwork& g, NodeLabel from,
                                       NodeLabel to) {
    std::vector<double> out;
    for (NodeId v : g.nodes_in(from)) {
        std::int64_t links = 0;
        for (NodeId w : g.out_neighbors(v))
            if (g.label(w) == to) ++links;
        out.push_back(static_cast<double>(links));
    }
    return out;
}

}  // namespace wikinav
