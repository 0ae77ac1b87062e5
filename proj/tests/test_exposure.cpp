#include <doctest.h>

#include <cmath>

#include "support/builders.hpp"
#include "support/dense_oracle.hpp"
#include "wikinav/errors.hpp"
#include "wikinav/exposure.hpp"
#include "wikinav/numeric.hpp"

using namespace wikinav;
using testsupport::EdgeSpec;
using testsupport::NodeSpec;
using testsupport::make_net;

TEST_SUITE_BEGIN("exposure");

namespace {

struct Setup {
    TopicInducedNetwork g;
    TransitionMatrix m;
    Trajectory traj;
    std::vector<NodeId> p;
    std::vector<NodeId> pbar;
};

Setup fixture_setup(std::uint64_t seed, double alpha = 0.25, int clicks = 8) {
    auto fx = testsupport::fixture_network({.p_nodes = 18,
                                            .pbar_nodes = 14,
                                            .neighbor_nodes = 6,
                                            .exterior_nodes = 3,
                                            .across_p = 0.3,
                                            .seed = seed});
    auto m = uniform_matrix(fx.net);
    NavigationConfig cfg;
    cfg.alpha = alpha;
    cfg.max_clicks = clicks;
    auto traj = evolve(m, uniform_start(fx.net, NodeLabel::P), cfg);
    auto p = fx.net.nodes_in(NodeLabel::P);
    auto pbar = fx.net.nodes_in(NodeLabel::PBar);
    return Setup{std::move(fx.net), std::move(m), std::move(traj), std::move(p),
                 std::move(pbar)};
}

}  // namespace

TEST_CASE("all mass crossing a single edge gives exposure 1") {
    const auto g = make_net({{"a", NodeLabel::P}, {"b", NodeLabel::PBar}},
                            {{"a", "b"}, {"b", "a"}});
    const auto m = uniform_matrix(g);
    NavigationConfig cfg;
    cfg.max_clicks = 1;
    const auto t = evolve(m, uniform_start(g, NodeLabel::P), cfg);
    CHECK(exdin(t, g.nodes_in(NodeLabel::PBar), 1) == 1.0);
}

TEST_CASE("exposure to the whole vertex set is total mass") {
    const auto s = fixture_setup(3);
    std::vector<NodeId> everything;
    for (NodeId v = 0; v < s.g.node_count(); ++v) everything.push_back(v);
    for (int l = 1; l <= s.traj.length(); ++l)
        CHECK(exdin(s.traj, everything, l) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("step bounds are enforced") {
    const auto s = fixture_setup(4);
    CHECK_THROWS_AS(exdin(s.traj, s.pbar, 0), DataError);
    CHECK_THROWS_AS(exdin(s.traj, s.pbar, s.traj.length() + 1), DataError);
}

TEST_CASE("exposure equals a dense-oracle summation") {
    const auto s = fixture_setup(5);
    const auto dm = oracle::dense_uniform(s.g);
    std::vector<double> pi0(s.g.node_count(), 0.0);
    for (NodeId v : s.p) pi0[v] = 1.0 / static_cast<double>(s.p.size());
    const auto dense = oracle::dense_evolve(dm, pi0, 0.25, 8);
    for (int l = 1; l <= 8; ++l) {
        double expect = 0.0;
        for (NodeId v : s.pbar) expect += dense[static_cast<std::size_t>(l)][v];
        CHECK(exdin(s.traj, s.pbar, l) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("multiset exposure") {
    const auto s = fixture_setup(6);
    SUBCASE("partition of V sums to 1") {
        std::vector<std::vector<NodeId>> parts(4);
        parts[0] = s.p;
        parts[1] = s.pbar;
        parts[2] = s.g.nodes_in(NodeLabel::Neighbor);
        parts[3] = s.g.nodes_in(NodeLabel::Super);
        const auto values = exdin_multiset(s.traj, parts, 3);
        CHECK(compensated_sum(values) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("additivity against the union set") {
        std::vector<std::vector<NodeId>> split(2);
        for (std::size_t i = 0; i < s.pbar.size(); ++i)
            split[i % 2].push_back(s.pbar[i]);
        const auto values = exdin_multiset(s.traj, split, 2);
        const double whole = exdin(s.traj, s.pbar, 2);
        CHECK(values[0] + values[1] == doctest::Approx(whole).epsilon(1e-12));
    }
    SUBCASE("four-way split equals brute-force per-set sums") {
        std::vector<std::vector<NodeId>> split(4);
        for (std::size_t i = 0; i < s.pbar.size(); ++i) split[i % 4].push_back(s.pbar[i]);
        const auto values = exdin_multiset(s.traj, split, 4);
        const auto pi = s.traj.at(4);
        for (int part = 0; part < 4; ++part) {
            double expect = 0.0;
            for (NodeId v : split[static_cast<std::size_t>(part)]) expect += pi[v];
            CHECK(values[static_cast<std::size_t>(part)] == expect);
        }
    }
    SUBCASE("overlapping sets are rejected") {
        std::vector<std::vector<NodeId>> overlapping{{s.p[0], s.p[1]}, {s.p[1]}};
        CHECK_THROWS_AS(exdin_multiset(s.traj, overlapping, 1), DataError);
    }
}

TEST_CASE("mutual exposure contract") {
    CHECK(mutual_exposure(0.2, 0.1) == 0.5);
    CHECK(mutual_exposure(0.1, 0.2) == 0.5);
    CHECK(mutual_exposure(0.3, 0.0) == 0.0);
    CHECK(mutual_exposure(0.0, 0.3) == 0.0);
    CHECK(mutual_exposure(0.0, 0.0) == 0.0);
    CHECK(mutual_exposure(0.42, 0.42) == 1.0);
    for (double a : {0.01, 0.2, 0.77}) {
        for (double b : {0.02, 0.5, 0.99}) {
            const double m = mutual_exposure(a, b);
            CHECK(m == mutual_exposure(b, a));
            CHECK(m >= 0.0);
            CHECK(m <= 1.0);
        }
    }
}

TEST_CASE("exposure ratio") {
    const auto s = fixture_setup(7);
    SUBCASE("matches direct division on a fixture") {
        for (int l = 1; l <= s.traj.length(); ++l) {
            const auto ratio = exposure_ratio(s.traj, s.pbar, s.p, l);
            const double within = exdin(s.traj, s.p, l);
            if (within == 0.0) {
                CHECK(!ratio.has_value());
            } else {
                REQUIRE(ratio.has_value());
                CHECK(*ratio == exdin(s.traj, s.pbar, l) / within);
            }
        }
    }
    SUBCASE("zero numerator gives zero") {
        // PBAR is an unreachable island, so the across mass stays 0
        const auto g2 = make_net(
            {{"a", NodeLabel::P}, {"b", NodeLabel::P}, {"c", NodeLabel::PBar},
             {"d", NodeLabel::PBar}},
            {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}});
        const auto m = uniform_matrix(g2);
        NavigationConfig cfg;
        cfg.max_clicks = 3;
        const auto t = evolve(m, uniform_start(g2, NodeLabel::P), cfg);
        const auto ratio =
            exposure_ratio(t, g2.nodes_in(NodeLabel::PBar), g2.nodes_in(NodeLabel::P), 2);
        REQUIRE(ratio.has_value());
        CHECK(*ratio == 0.0);
    }
    SUBCASE("zero denominator is undefined, not a number") {
        const auto g = make_net({{"a", NodeLabel::P}, {"b", NodeLabel::PBar}},
                                {{"a", "b"}, {"b", "a"}});
        const auto m = uniform_matrix(g);
        NavigationConfig cfg;
        cfg.max_clicks = 1;
        const auto t = evolve(m, uniform_start(g, NodeLabel::P), cfg);
        CHECK(!exposure_ratio(t, g.nodes_in(NodeLabel::PBar), g.nodes_in(NodeLabel::P), 1)
                   .has_value());
    }
}

TEST_CASE("adjusted exposure") {
    const auto s = fixture_setup(8);
    NavigationConfig cfg;
    cfg.alpha = 0.25;
    cfg.max_clicks = 4;

    SUBCASE("single replicate with a fixed seed is reproducible") {
        const auto one = adjusted_exdin(s.g, s.m, cfg, 2, 1, 0.9, 1234);
        const auto two = adjusted_exdin(s.g, s.m, cfg, 2, 1, 0.9, 1234);
        CHECK(one.p_to_pbar.replicate_values == two.p_to_pbar.replicate_values);
        CHECK(one.p_to_pbar.mean == two.p_to_pbar.mean);
        CHECK(one.pbar_to_p.mean == two.pbar_to_p.mean);
    }
    SUBCASE("gamma=0 collapses the interval to the median") {
        const auto adj = adjusted_exdin(s.g, s.m, cfg, 2, 25, 0.0, 77);
        CHECK(adj.p_to_pbar.ci_low == adj.p_to_pbar.ci_high);
        CHECK(adj.p_to_pbar.ci_low ==
              sample_quantile(adj.p_to_pbar.replicate_values, 0.5));
    }
    SUBCASE("interval brackets the mean") {
        const auto adj = adjusted_exdin(s.g, s.m, cfg, 2, 200, 0.9, 99);
        CHECK(adj.p_to_pbar.ci_low <= adj.p_to_pbar.mean);
        CHECK(adj.p_to_pbar.mean <= adj.p_to_pbar.ci_high);
    }
    SUBCASE("threading does not change results") {
        const auto seq = adjusted_exdin(s.g, s.m, cfg, 2, 40, 0.9, 5, 1);
        const auto par = adjusted_exdin(s.g, s.m, cfg, 2, 40, 0.9, 5, 4);
        CHECK(seq.p_to_pbar.replicate_values == par.p_to_pbar.replicate_values);
        CHECK(seq.pbar_to_p.replicate_values == par.pbar_to_p.replicate_values);
    }
    SUBCASE("rejects bad parameters") {
        CHECK_THROWS_AS(adjusted_exdin(s.g, s.m, cfg, 2, 0, 0.9, 1), ConfigError);
        CHECK_THROWS_AS(adjusted_exdin(s.g, s.m, cfg, 2, 10, 1.0, 1), ConfigError);
        CHECK_THROWS_AS(adjusted_exdin(s.g, s.m, cfg, 9, 10, 0.9, 1), ConfigError);
    }
}

TEST_CASE("balanced-partition bootstrap mean approaches the plain value") {
    auto fx = testsupport::fixture_network({.p_nodes = 16,
                                            .pbar_nodes = 16,
                                            .mean_out_degree = 5.0,
                                            .across_p = 0.35,
                                            .seed = 10});
    const auto m = uniform_matrix(fx.net);
    NavigationConfig cfg;
    cfg.alpha = 0.5;
    cfg.max_clicks = 3;
    const auto plain_traj = evolve(m, uniform_start(fx.net, NodeLabel::P), cfg);
    const double plain = exdin(plain_traj, fx.net.nodes_in(NodeLabel::PBar), 2);

    const int B = 2000;
    const auto adj = adjusted_exdin(fx.net, m, cfg, 2, B, 0.9, 321);
    double var = 0.0;
    for (double v : adj.p_to_pbar.replicate_values)
        var += (v - adj.p_to_pbar.mean) * (v - adj.p_to_pbar.mean);
    var /= (B - 1);
    // bootstrap standard error = spread of the replicate distribution
    const double se = std::sqrt(var);
    CHECK(std::abs(adj.p_to_pbar.mean - plain) <= 2.0 * se);
}

TEST_CASE("per-node exposure") {
    const auto g = make_net(
        {{"a", NodeLabel::P}, {"b", NodeLabel::PBar}, {"c", NodeLabel::P}},
        {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    const auto m = uniform_matrix(g);
    NavigationConfig cfg;
    cfg.max_clicks = 2;
    SUBCASE("only edge into the target yields 1 at the first click") {
        CHECK(per_node_exposure(g, m, cfg, *g.find("a"), g.nodes_in(NodeLabel::PBar), 1) == 1.0);
    }
    SUBCASE("no path within the horizon yields 0") {
        CHECK(per_node_exposure(g, m, cfg, *g.find("b"), g.nodes_in(NodeLabel::PBar), 1) == 0.0);
        CHECK(per_node_exposure(g, m, cfg, *g.find("b"), g.nodes_in(NodeLabel::PBar), 2) == 0.0);
    }
    SUBCASE("unknown start node is an error") {
        CHECK_THROWS_AS(per_node_exposure(g, m, cfg, 999, g.nodes_in(NodeLabel::PBar), 1),
                        DataError);
    }
}

TEST_CASE("per-node exposure matches the dense oracle on a fixture") {
    const auto s = fixture_setup(12);
    NavigationConfig cfg;
    cfg.alpha = 0.25;
    cfg.max_clicks = 4;
    const auto dm = oracle::dense_uniform(s.g);
    for (NodeId start : {s.p[0], s.p[3], s.pbar[1]}) {
        std::vector<double> pi0(s.g.node_count(), 0.0);
        pi0[start] = 1.0;
        const auto dense = oracle::dense_evolve(dm, pi0, cfg.alpha, cfg.max_clicks);
        double expect = 0.0;
        for (NodeId v : s.pbar) expect += dense[3][v];
        CHECK(per_node_exposure(s.g, s.m, cfg, start, s.pbar, 3) ==
              doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_SUITE_END();
