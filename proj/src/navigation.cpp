#include "wikinav/navigation.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <utility>

#include "wikinav/errors.hpp"
#include "wikinav/numeric.hpp"

namespace wikinav {

StartDistribution make_start(std::vector<double> probabilities) {
    for (double p : probabilities)
        if (p < 0.0) throw DataError("start distribution entries must be non-negative");
    const double sum = compensated_sum(probabilities);
    if (std::abs(sum - 1.0) > 1e-12)
        throw DataError("start distribution must sum to 1, got " + std::to_string(sum));
    return StartDistribution{std::move(probabilities)};
}

StartDistribution uniform_start(const TopicInducedNetwork& g, NodeLabel label) {
    const auto members = g.nodes_in(label);
    if (members.empty())
        throw DataError(std::string("no nodes labeled ") + to_string(label) +
                        ", cannot build a start distribution");
    std::vector<double> pi(g.node_count(), 0.0);
    const double p = 1.0 / static_cast<double>(members.size());
    for (NodeId v : members) pi[v] = p;
    return StartDistribution{std::move(pi)};
}

StartDistribution indicator_start(const TopicInducedNetwork& g, NodeId v) {
    if (v >= g.node_count()) throw DataError("unknown node id " + std::to_string(v));
    std::vector<double> pi(g.node_count(), 0.0);
    pi[v] = 1.0;
    return StartDistribution{std::move(pi)};
}

StartDistribution multiset_start(std::size_t node_count, std::span<const NodeId> draws) {
    if (draws.empty()) throw DataError("empty sample, cannot build a start distribution");
    std::vector<double> pi(node_count, 0.0);
    const double w = 1.0 / static_cast<double>(draws.size());
    for (NodeId v : draws) {
        if (v >= node_count) throw DataError("sample node id out of range");
        pi[v] += w;
    }
    return StartDistribution{std::move(pi)};
}

void validate(const NavigationConfig& cfg) {
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0))
        throw ConfigError("alpha must lie in [0,1]");
    if (cfg.max_clicks < 1) throw ConfigError("max_clicks must be at least 1");
    if (!(cfg.convergence_tol > 0.0)) throw ConfigError("convergence_tol must be positive");
    if (cfg.max_convergence_iters < 1)
        throw ConfigError("max_convergence_iters must be at least 1");
    if (!(cfg.cwp.smoothing > 0.0)) throw ConfigError("clicks smoothing count must be positive");
}

std::span<const double> Trajectory::at(int l) const {
    if (l < 0 || l >= static_cast<int>(steps.size()))
        throw DataError("trajectory step " + std::to_string(l) + " out of range [0, " +
                        std::to_string(steps.size() - 1) + "]");
    return steps[static_cast<std::size_t>(l)];
}

namespace {

// values[k] *= 1/(1 + pi_prev[col[k]]), then rows renormalized in place.
void deflate_values(std::span<const std::size_t> rows, std::span<const NodeId> cols,
                    std::span<double> values, std::span<const double> pi_prev,
                    std::span<double> inv_scale) {
    for (std::size_t j = 0; j < pi_prev.size(); ++j) inv_scale[j] = 1.0 / (1.0 + pi_prev[j]);
    const std::size_t n = rows.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t begin = rows[i];
        const std::size_t end = rows[i + 1];
        if (begin == end) continue;
        double sum = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            values[k] *= inv_scale[cols[k]];
            sum += values[k];
        }
        const double inv = 1.0 / sum;
        for (std::size_t k = begin; k < end; ++k) values[k] *= inv;
    }
}

// out = x * M. Rows with zero x contribute nothing and are skipped, which
// makes the first steps of sparse starts cheap.
void propagate(std::span<const std::size_t> rows, std::span<const NodeId> cols,
               std::span<const double> values, std::span<const double> x,
               std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    const std::size_t n = rows.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t k = rows[i]; k < rows[i + 1]; ++k) out[cols[k]] += xi * values[k];
    }
}

// Shared engine for the finite-session and run-to-convergence variants.
// on_step(l, pi) is called for each freshly computed pi[l], l >= 1; it
// returns true to keep iterating.
void evolve_core(const TransitionMatrix& m0, const StartDistribution& start,
                 const NavigationConfig& cfg, int max_steps,
                 const std::function<bool(int, std::span<const double>)>& on_step) {
    validate(cfg);
    const std::size_t n = m0.dim();
    if (start.probabilities.size() != n)
        throw DataError("start distribution dimension " +
                        std::to_string(start.probabilities.size()) +
                        " does not match matrix dimension " + std::to_string(n));

    const auto rows = m0.row_ptr();
    const auto cols = m0.cols();
    std::vector<double> values(m0.values().begin(), m0.values().end());
    std::vector<double> inv_scale(n);

    const std::vector<double>& pi0 = start.probabilities;
    std::vector<double> prev = pi0;             // pi[l-1]
    std::vector<double> curr(n);                // pi[l]
    std::vector<double> next(n);
    std::vector<double> mix(n);

    propagate(rows, cols, values, pi0, curr);
    if (!on_step(1, curr)) return;

    const double alpha = cfg.alpha;
    for (int l = 1; l < max_steps; ++l) {
        // M_l derives from the already-deflated M_(l-1); pi[l-1] drives it.
        if (cfg.deflate) deflate_values(rows, cols, values, prev, inv_scale);
        if (alpha == 0.0) {
            propagate(rows, cols, values, curr, next);
        } else if (alpha == 1.0) {
            propagate(rows, cols, values, pi0, next);
        } else {
            for (std::size_t j = 0; j < n; ++j) mix[j] = (1.0 - alpha) * curr[j] + alpha * pi0[j];
            propagate(rows, cols, values, mix, next);
        }
        prev.swap(curr);
        curr.swap(next);
        if (!on_step(l + 1, curr)) return;
    }
}

}  // namespace

TransitionMatrix deflate_update(const TransitionMatrix& m, std::span<const double> pi_prev) {
    if (pi_prev.size() != m.dim())
        throw DataError("deflation vector dimension does not match matrix");
    std::vector<double> values(m.values().begin(), m.values().end());
    std::vector<double> inv_scale(m.dim());
    deflate_values(m.row_ptr(), m.cols(), values, pi_prev, inv_scale);
    return m.with_values(std::move(values));
}

Trajectory evolve(const TransitionMatrix& m0, const StartDistribution& start,
                  const NavigationConfig& cfg) {
    Trajectory t;
    t.config = cfg;
    t.steps.reserve(static_cast<std::size_t>(cfg.max_clicks) + 1);
    t.steps.push_back(start.probabilities);
    evolve_core(m0, start, cfg, cfg.max_clicks, [&](int, std::span<const double> pi) {
        t.steps.emplace_back(pi.begin(), pi.end());
        return true;
    });
    return t;
}

ConvergenceResult evolve_to_convergence(const TransitionMatrix& m0,
                                        const StartDistribution& start,
                                        const NavigationConfig& cfg) {
    ConvergenceResult result;
    std::vector<double> previous = start.probabilities;
    evolve_core(m0, start, cfg, cfg.max_convergence_iters,
                [&](int l, std::span<const double> pi) {
                    result.last_delta = l1_distance(previous, pi);
                    result.steps = l;
                    previous.assign(pi.begin(), pi.end());
                    if (result.last_delta < cfg.convergence_tol) {
                        result.converged = true;
                        return false;
                    }
                    return true;
                });
    result.final_distribution = std::move(previous);
    return result;
}

void write_trajectory_tsv(const Trajectory& t, std::ostream& out) {
    out << "# step\tnode\tprob\n";
    char buf[64];
    for (std::size_t l = 0; l < t.steps.size(); ++l) {
        const auto& pi = t.steps[l];
        for (std::size_t v = 0; v < pi.size(); ++v) {
            if (pi[v] < 1e-15) continue;
            std::snprintf(buf, sizeof(buf), "%zu\t%zu\t%.17g\n", l, v, pi[v]);
            out << buf;
        }
    }
}

}  // namespace wikinav
