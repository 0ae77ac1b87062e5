#include "wikinav/report.hpp"

#include <cstdio>

#include "wikinav/errors.hpp"

namespace wikinav {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ExposureReport compute_exposure_report(const TopicInducedNetwork& g, const TransitionMatrix& m0,
                                       const NavigationConfig& cfg, const std::string& topic,
                                       const ExposureOptions& opts) {
    validate(cfg);
    const auto p_nodes = g.nodes_in(NodeLabel::P);
    const auto pbar_nodes = g.nodes_in(NodeLabel::PBar);

    ExposureReport report;
    report.topic = topic;
    report.alpha = cfg.alpha;
    report.cwp = to_string(cfg.cwp.kind);

    const Trajectory traj_p = evolve(m0, uniform_start(g, NodeLabel::P), cfg);
    const Trajectory traj_pbar = evolve(m0, uniform_start(g, NodeLabel::PBar), cfg);

    for (int l = 1; l <= cfg.max_clicks; ++l) {
        StepExposure step;
        step.l = l;
        step.e_p_to_pbar = exdin(traj_p, pbar_nodes, l);
        step.e_pbar_to_p = exdin(traj_pbar, p_nodes, l);
        step.ratio_p = exposure_ratio(traj_p, pbar_nodes, p_nodes, l);
        step.ratio_pbar = exposure_ratio(traj_pbar, p_nodes, pbar_nodes, l);
        step.mutual = mutual_exposure(step.e_p_to_pbar, step.e_pbar_to_p);
        report.steps.push_back(step);
    }

    if (opts.bootstrap_replicates > 0) {
        report.adjusted =
            adjusted_exdin(g, m0, cfg, opts.adjusted_step, opts.bootstrap_replicates, opts.gamma,
                           opts.seed, opts.threads);
    }

    if (opts.run_convergence) {
        ConvergenceSummary conv;
        const auto from_p = evolve_to_convergence(m0, uniform_start(g, NodeLabel::P), cfg);
        const auto from_pbar = evolve_to_convergence(m0, uniform_start(g, NodeLabel::PBar), cfg);
        conv.converged_p = from_p.converged;
        conv.converged_pbar = from_pbar.converged;
        conv.steps_p = from_p.steps;
        conv.steps_pbar = from_pbar.steps;
        auto set_sum = [](const std::vector<double>& pi, const std::vector<NodeId>& set) {
            double s = 0.0;
            for (NodeId v : set) s += pi[v];
            return s;
        };
        const double p_to_pbar = set_sum(from_p.final_distribution, pbar_nodes);
        const double p_to_p = set_sum(from_p.final_distribution, p_nodes);
        const double pbar_to_p = set_sum(from_pbar.final_distribution, p_nodes);
        const double pbar_to_pbar = set_sum(from_pbar.final_distribution, pbar_nodes);
        if (p_to_p > 0.0) conv.ratio_p = p_to_pbar / p_to_p;
        if (pbar_to_pbar > 0.0) conv.ratio_pbar = pbar_to_p / pbar_to_pbar;
        conv.mutual = mutual_exposure(p_to_pbar, pbar_to_p);
        report.convergence = conv;
    }

    return report;
}

namespace {

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

nlohmann::ordered_json adjusted_json(const AdjustedExposure& adj) {
    nlohmann::ordered_json j;
    j["mean"] = adj.mean;
    j["ci_low"] = adj.ci_low;
    j["ci_high"] = adj.ci_high;
    j["B"] = adj.replicates;
    j["gamma"] = adj.gamma;
    j["seed"] = adj.seed;
    j["step"] = adj.step;
    return j;
}

}  // namespace

nlohmann::ordered_json exposure_report_json(const ExposureReport& report) {
    nlohmann::ordered_json j;
    j["topic"] = report.topic;
    j["alpha"] = report.alpha;
    j["cwp"] = report.cwp;
    j["steps"] = nlohmann::ordered_json::array();
    for (const StepExposure& s : report.steps) {
        nlohmann::ordered_json step;
        step["l"] = s.l;
        step["e_p_to_pbar"] = s.e_p_to_pbar;
        step["e_pbar_to_p"] = s.e_pbar_to_p;
        step["ratio_p"] = optional_json(s.ratio_p);
        step["ratio_pbar"] = optional_json(s.ratio_pbar);
        step["mutual"] = s.mutual;
        j["steps"].push_back(step);
    }
    if (report.adjusted) {
        j["adjusted"] = adjusted_json(report.adjusted->p_to_pbar);
        j["adjusted_reverse"] = adjusted_json(report.adjusted->pbar_to_p);
    }
    if (report.convergence) {
        const ConvergenceSummary& c = *report.convergence;
        nlohmann::ordered_json conv;
        conv["converged_p"] = c.converged_p;
        conv["converged_pbar"] = c.converged_pbar;
        conv["steps_p"] = c.steps_p;
        conv["steps_pbar"] = c.steps_pbar;
        conv["ratio_p"] = optional_json(c.ratio_p);
        conv["ratio_pbar"] = optional_json(c.ratio_pbar);
        conv["mutual"] = c.mutual;
        j["convergence"] = conv;
    }
    return j;
}

std::string exposure_report_csv(const ExposureReport& report) {
    std::string out = "step,e_p_to_pbar,e_pbar_to_p,ratio_p,ratio_pbar,mutual\n";
    for (const StepExposure& s : report.steps) {
        out += std::to_string(s.l);
        out += ',';
        out += format_double(s.e_p_to_pbar);
        out += ',';
        out += format_double(s.e_pbar_to_p);
        out += ',';
        if (s.ratio_p) out += format_double(*s.ratio_p);
        out += ',';
        if (s.ratio_pbar) out += format_double(*s.ratio_pbar);
        out += ',';
        out += format_double(s.mutual);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json stats_report_json(const TopicInducedNetwork& g, const StatsOptions& opts) {
    nlohmann::ordered_json j;
    j["topic"] = g.meta().topic;

    nlohmann::ordered_json nodes;
    nodes["p"] = g.count_nodes(NodeLabel::P);
    nodes["pbar"] = g.count_nodes(NodeLabel::PBar);
    nodes["neighbor"] = g.count_nodes(NodeLabel::Neighbor);
    nodes["total_without_super"] = g.node_count() - 1;
    j["nodes"] = nodes;

    const BlockEdgeCounts counts = block_edge_counts(g);
    nlohmann::ordered_json blocks;
    const NodeLabel labels[4] = {NodeLabel::P, NodeLabel::PBar, NodeLabel::Neighbor,
                                 NodeLabel::Super};
    for (NodeLabel from : labels) {
        for (NodeLabel to : labels) {
            const std::int64_t c = counts.count(from, to);
            if (c != 0)
                blocks[std::string(to_string(from)) + "->" + to_string(to)] = c;
        }
    }
    nlohmann::ordered_json edges;
    edges["total"] = counts.total();
    edges["blocks"] = blocks;
    j["edges"] = edges;

    const BlockFractions fractions = block_fractions(g);
    nlohmann::ordered_json frac;
    frac["p_within"] = optional_json(fractions.p_within);
    frac["p_across"] = optional_json(fractions.p_across);
    frac["pbar_within"] = optional_json(fractions.pbar_within);
    frac["pbar_across"] = optional_json(fractions.pbar_across);
    j["fractions"] = frac;

    if (opts.with_null_model) {
        const std::int64_t swaps =
            opts.rewire_swaps < 0 ? 10 * static_cast<std::int64_t>(g.edge_count())
                                  : opts.rewire_swaps;
        const ExpectedFractions expected =
            expected_random_fractions(g, opts.rewire_samples, swaps, opts.seed, opts.threads);
        auto mean_sd_json = [](const std::optional<MeanSd>& v) -> nlohmann::ordered_json {
            if (!v) return nullptr;
            nlohmann::ordered_json out;
            out["mean"] = v->mean;
            out["sd"] = v->sd;
            return out;
        };
        nlohmann::ordered_json null_model;
        null_model["samples"] = expected.samples;
        null_model["swaps"] = swaps;
        null_model["seed"] = opts.seed;
        null_model["p_within"] = mean_sd_json(expected.p_within);
        null_model["p_across"] = mean_sd_json(expected.p_across);
        null_model["pbar_within"] = mean_sd_json(expected.pbar_within);
        null_model["pbar_across"] = mean_sd_json(expected.pbar_across);
        j["expected_random"] = null_model;
    }

    auto across_json = [&](NodeLabel side) {
        const AcrossLinkStats s = across_link_node_fraction(g, side);
        nlohmann::ordered_json out;
        out["node_fraction"] = s.node_fraction;
        out["mean_links_per_connected_node"] = optional_json(s.mean_links_per_node);
        return out;
    };
    nlohmann::ordered_json across;
    across["p"] = across_json(NodeLabel::P);
    across["pbar"] = across_json(NodeLabel::PBar);
    j["across_links"] = across;

    {
        const TransitionMatrix m = build_matrix(g, opts.weight_cwp);
        auto weight_summary = [&](NodeLabel side) {
            const auto weights = across_weight_distribution(g, m, side);
            double sum = 0.0;
            double maxw = 0.0;
            std::size_t nonzero = 0;
            for (double w : weights) {
                sum += w;
                maxw = std::max(maxw, w);
                if (w > 0.0) ++nonzero;
            }
            nlohmann::ordered_json out;
            out["nodes"] = weights.size();
            out["nonzero_nodes"] = nonzero;
            out["mean"] = weights.empty() ? 0.0 : sum / static_cast<double>(weights.size());
            out["max"] = maxw;
            return out;
        };
        nlohmann::ordered_json weights;
        weights["cwp"] = to_string(opts.weight_cwp.kind);
        weights["p"] = weight_summary(NodeLabel::P);
        weights["pbar"] = weight_summary(NodeLabel::PBar);
        j["across_weights"] = weights;
    }

    {
        auto test_json = [&](std::span<const double> a, std::span<const double> b,
                             const char* winner_a, const char* winner_b) {
            nlohmann::ordered_json out;
            const auto result =
                bootstrap_welch_test(a, b, opts.bootstrap_replicates, opts.seed, opts.test_alpha);
            if (!result) {
                out["status"] = "undefined";
                return out;
            }
            out["p_value"] = result->p_value;
            out["t_statistic"] = result->t_statistic;
            out["significant"] = result->significant;
            out["alpha"] = result->alpha;
            out["higher_mean"] = result->direction == TestDirection::FirstHigher    ? winner_a
                                 : result->direction == TestDirection::SecondHigher ? winner_b
                                                                                    : "equal";
            return out;
        };
        const auto n_to_p = link_count_samples(g, NodeLabel::Neighbor, NodeLabel::P);
        const auto n_to_pbar = link_count_samples(g, NodeLabel::Neighbor, NodeLabel::PBar);
        const auto p_to_n = link_count_samples(g, NodeLabel::P, NodeLabel::Neighbor);
        const auto pbar_to_n = link_count_samples(g, NodeLabel::PBar, NodeLabel::Neighbor);
        nlohmann::ordered_json tests;
        if (n_to_p.size() >= 2 && n_to_pbar.size() >= 2)
            tests["incoming_from_neighborhood"] = test_json(n_to_p, n_to_pbar, "P", "PBAR");
        if (p_to_n.size() >= 2 && pbar_to_n.size() >= 2)
            tests["outgoing_to_neighborhood"] = test_json(p_to_n, pbar_to_n, "P", "PBAR");
        tests["B"] = opts.bootstrap_replicates;
        tests["seed"] = opts.seed;
        j["link_count_tests"] = tests;
    }

    return j;
}

std::string fractions_csv(const BlockFractions& observed, const ExpectedFractions* expected) {
    std::string out =
        "partition,within_fraction,across_fraction,expected_within_mean,expected_within_sd,"
        "expected_across_mean,expected_across_sd\n";
    auto row = [&](const char* name, const std::optional<double>& within,
                   const std::optional<double>& across, const std::optional<MeanSd>& ewithin,
                   const std::optional<MeanSd>& eacross) {
        out += name;
        out += ',';
        if (within) out += format_double(*within);
        out += ',';
        if (across) out += format_double(*across);
        out += ',';
        if (ewithin) out += format_double(ewithin->mean);
        out += ',';
        if (ewithin) out += format_double(ewithin->sd);
        out += ',';
        if (eacross) out += format_double(eacross->mean);
        out += ',';
        if (eacross) out += format_double(eacross->sd);
        out += '\n';
    };
    row("P", observed.p_within, observed.p_across, expected ? expected->p_within : std::nullopt,
        expected ? expected->p_across : std::nullopt);
    row("PBAR", observed.pbar_within, observed.pbar_across,
        expected ? expected->pbar_within : std::nullopt,
        expected ? expected->pbar_across : std::nullopt);
    return out;
}

std::string across_nodes_csv(const TopicInducedNetwork& g) {
    std::string out = "partition,node,across_links\n";
    for (NodeLabel side : {NodeLabel::P, NodeLabel::PBar}) {
        const NodeLabel other = side == NodeLabel::P ? NodeLabel::PBar : NodeLabel::P;
        for (NodeId v : g.nodes_in(side)) {
            std::int64_t links = 0;
            for (NodeId w : g.out_neighbors(v))
                if (g.label(w) == other) ++links;
            out += to_string(side);
            out += ',';
            out += g.name(v);
            out += ',';
            out += std::to_string(links);
            out += '\n';
        }
    }
    return out;
}

std::string across_weights_csv(const TopicInducedNetwork& g, const TransitionMatrix& m) {
    std::string out = "partition,node,across_weight\n";
    for (NodeLabel side : {NodeLabel::P, NodeLabel::PBar}) {
        const auto nodes = g.nodes_in(side);
        const auto weights = across_weight_distribution(g, m, side);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            out += to_string(side);
            out += ',';
            out += g.name(nodes[i]);
            out += ',';
            out += format_double(weights[i]);
            out += '\n';
        }
    }
    return out;
}

}  // namespace wikinav
