#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wikinav/exposure.hpp"
#include "wikinav/graph.hpp"
#include "wikinav/navigation.hpp"
#include "wikinav/stats.hpp"
#include "wikinav/transition.hpp"

namespace wikinav {

struct StepExposure {
    int l = 0;
    double e_p_to_pbar = 0.0;
    double e_pbar_to_p = 0.0;
    std::optional<double> ratio_p;     // e(P->PBAR) / e(P->P)
    std::optional<double> ratio_pbar;  // e(PBAR->P) / e(PBAR->PBAR)
    double mutual = 0.0;
};

struct ConvergenceSummary {
    bool converged_p = false;
    bool converged_pbar = false;
    int steps_p = 0;
    int steps_pbar = 0;
    std::optional<double> ratio_p;
    std::optional<double> ratio_pbar;
    double mutual = 0.0;
};

struct ExposureReport {
    std::string topic;
    double alpha = 0.0;
    std::string cwp;
    std::vector<StepExposure> steps;
    std::optional<AdjustedExposurePair> adjusted;
    std::optional<ConvergenceSummary> convergence;
};

struct ExposureOptions {
    int bootstrap_replicates = 0;  // 0: skip the adjusted block
    double gamma = 0.90;
    std::uint64_t seed = 42;
    int adjusted_step = 1;
    bool run_convergence = false;
    unsigned threads = 0;
};

// Runs both directed sessions plus the optional adjusted bootstrap and
// convergence passes for one (matrix, alpha, L) configuration.
ExposureReport compute_exposure_report(const TopicInducedNetwork& g, const TransitionMatrix& m0,
                                       const NavigationConfig& cfg, const std::string& topic,
                                       const ExposureOptions& opts);

nlohmann::ordered_json exposure_report_json(const ExposureReport& report);
std::string exposure_report_csv(const ExposureReport& report);
std::string exposure_report_svg(const ExposureReport& report);

struct StatsOptions {
    int rewire_samples = 30;
    std::int64_t rewire_swaps = -1;  // < 0: 10 * |E|
    std::uint64_t seed = 42;
    int bootstrap_replicates = 10000;
    double test_alpha = 0.05;
    bool with_null_model = true;
    CwpSpec weight_cwp{};
    unsigned threads = 0;
};

nlohmann::ordered_json stats_report_json(const TopicInducedNetwork& g, const StatsOptions& opts);

// Per-figure CSV analogues of the stats report blocks.
std::string fractions_csv(const BlockFractions& observed, const ExpectedFractions* expected);
std::string across_nodes_csv(const TopicInducedNetwork& g);
std::string across_weights_csv(const TopicInducedNetwork& g, const TransitionMatrix& m);

std::string format_double(double v);

}  // namespace wikinav
