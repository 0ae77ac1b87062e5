#include "wikinav/exposure.hpp"

#include <algorithm>
#include <cmath>

#include "wikinav/errors.hpp"
#include "wikinav/numeric.hpp"
#include "wikinav/parallel.hpp"
#include "wikinav/rng.hpp"

namespace wikinav {

double exdin(const Trajectory& t, std::span<const NodeId> target, int step) {
    if (step < 1 || step > t.length())
        throw DataError("exposure step " + std::to_string(step) + " out of range [1, " +
                        std::to_string(t.length()) + "]");
    const auto pi = t.at(step);
    double sum = 0.0;
    for (NodeId v : target) {
        if (v >= pi.size()) throw DataError("target node id out of range");
        sum += pi[v];
    }
    return sum;
}

std::vector<double> exdin_multiset(const Trajectory& t,
                                   const std::vector<std::vector<NodeId>>& targets, int step) {
    if (!t.steps.empty()) {
        std::vector<bool> seen(t.steps.front().size(), false);
        for (const auto& set : targets) {
            for (NodeId v : set) {
                if (v >= seen.size()) throw DataError("target node id out of range");
                if (seen[v])
                    throw DataError("target sets overlap on node id " + std::to_string(v));
                seen[v] = true;
            }
        }
    }
    std::vector<double> out;
    out.reserve(targets.size());
    for (const auto& set : targets) out.push_back(exdin(t, set, step));
    return out;
}

double mutual_exposure(double e_pq, double e_qp) {
    if (e_pq < 0.0 || e_qp < 0.0) throw DataError("exposure values must be non-negative");
    if (e_pq == 0.0 || e_qp == 0.0) return 0.0;
    return std::min(e_pq, e_qp) / std::max(e_pq, e_qp);
}

std::optional<double> exposure_ratio(const Trajectory& t, std::span<const NodeId> across,
                                     std::span<const NodeId> within, int step) {
    const double denom = exdin(t, within, step);
    if (denom == 0.0) return std::nullopt;
    return exdin(t, across, step) / denom;
}

double sample_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw DataError("quantile of an empty sample");
    q = std::clamp(q, 0.0, 1.0);
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

double multiset_mass(std::span<const double> pi, std::span<const NodeId> draws) {
    double sum = 0.0;
    for (NodeId v : draws) sum += pi[v];
    return sum;
}

AdjustedExposure summarize(std::vector<double> values, double gamma, std::uint64_t seed,
                           int step) {
    AdjustedExposure adj;
    adj.replicates = static_cast<int>(values.size());
    adj.gamma = gamma;
    adj.seed = seed;
    adj.step = step;
    adj.mean = compensated_sum(values) / static_cast<double>(values.size());
    adj.ci_low = sample_quantile(values, (1.0 - gamma) / 2.0);
    adj.ci_high = sample_quantile(values, (1.0 + gamma) / 2.0);
    adj.replicate_values = std::move(values);
    return adj;
}

}  // namespace

AdjustedExposurePair adjusted_exdin(const TopicInducedNetwork& g, const TransitionMatrix& m0,
                                    const NavigationConfig& cfg, int step, int replicates,
                                    double gamma, std::uint64_t seed, unsigned threads) {
    validate(cfg);
    if (replicates < 1) throw ConfigError("bootstrap needs at least one replicate");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw ConfigError("confidence level gamma must lie in [0,1)");
    if (step < 1 || step > cfg.max_clicks)
        throw ConfigError("adjusted exposure step out of session range");

    const auto p_nodes = g.nodes_in(NodeLabel::P);
    const auto pbar_nodes = g.nodes_in(NodeLabel::PBar);
    const std::size_t z = std::min(p_nodes.size(), pbar_nodes.size());
    if (z == 0) throw DataError("both partitions must be non-empty for adjusted exposure");

    std::vector<double> forward(static_cast<std::size_t>(replicates));
    std::vector<double> backward(static_cast<std::size_t>(replicates));

    parallel_for(
        static_cast<std::size_t>(replicates),
        [&](std::size_t b) {
            Rng rng(derive_stream_seed(seed, b));
            std::vector<NodeId> sample_p(z);
            std::vector<NodeId> sample_pbar(z);
            for (std::size_t i = 0; i < z; ++i)
                sample_p[i] = p_nodes[rng.bounded(p_nodes.size())];
            for (std::size_t i = 0; i < z; ++i)
                sample_pbar[i] = pbar_nodes[rng.bounded(pbar_nodes.size())];

            // Multiplicity-weighted target sum: with z equal to the smaller
            // partition the replicate value is an unbiased estimate of the
            // full-set exposure.
            const auto traj_p = evolve(m0, multiset_start(g.node_count(), sample_p), cfg);
            forward[b] = multiset_mass(traj_p.at(step), sample_pbar);
            const auto traj_pbar = evolve(m0, multiset_start(g.node_count(), sample_pbar), cfg);
            backward[b] = multiset_mass(traj_pbar.at(step), sample_p);
        },
        threads);

    AdjustedExposurePair pair;
    pair.p_to_pbar = summarize(std::move(forward), gamma, seed, step);
    pair.pbar_to_p = summarize(std::move(backward), gamma, seed, step);
    return pair;
}

double per_node_exposure(const TopicInducedNetwork& g, const TransitionMatrix& m0,
                         const NavigationConfig& cfg, NodeId start,
                         std::span<const NodeId> target, int step) {
    const auto traj = evolve(m0, indicator_start(g, start), cfg);
    return exdin(traj, target, step);
}

}  // namespace wikinav
