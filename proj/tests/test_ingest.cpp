#include <doctest.h>

#include <set>
#include <sstream>
#include <unordered_set>

#include "wikinav/errors.hpp"
#include "wikinav/ingest.hpp"
#include "wikinav/io.hpp"
#include "wikinav/rng.hpp"

using namespace wikinav;

namespace {

RawGraph parse_edges(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

PartitionSpec parse_partitions(const std::string& text) {
    std::istringstream in(text);
    return parse_partition_file(in);
}

ClickCounts parse_clicks(const std::string& text) {
    std::istringstream in(text);
    return parse_clickstream(in);
}

CategoryGraph parse_categories(const std::string& text) {
    std::istringstream in(text);
    return parse_category_file(in);
}

}  // namespace

TEST_SUITE_BEGIN("ingest");

TEST_CASE("edge list basics") {
    SUBCASE("one edge, two nodes") {
        const auto g = parse_edges("a\tb\n");
        CHECK(g.node_count() == 2);
        CHECK(g.edge_count() == 1);
    }
    SUBCASE("self-loops are dropped") {
        const auto g = parse_edges("a\ta\n");
        CHECK(g.edge_count() == 0);
    }
    SUBCASE("comments and blank lines are skipped") {
        const auto g = parse_edges("# header\n\na\tb\t0\n");
        CHECK(g.edge_count() == 1);
    }
    SUBCASE("duplicates collapse keeping the minimum rank") {
        const auto g = parse_edges("a\tb\t7\na\tb\t3\na\tb\t9\n");
        REQUIRE(g.edge_count() == 1);
        CHECK(g.edges()[0].position == 3);
    }
    SUBCASE("malformed lines carry line numbers") {
        std::istringstream in("a\tb\nc\n");
        try {
            parse_edge_list(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("negative or non-numeric positions are rejected") {
        CHECK_THROWS_AS(parse_edges("a\tb\t-1\n"), ParseError);
        CHECK_THROWS_AS(parse_edges("a\tb\ttop\n"), ParseError);
    }
    SUBCASE("missing ranks fall to the end of the page in file order") {
        const auto g = parse_edges("a\tb\t0\na\tc\na\td\n");
        REQUIRE(g.edge_count() == 3);
        const auto& edges = g.edges();
        CHECK(edges[0].position == 0);  // a->b explicit
        CHECK(edges[1].position == 1);  // a->c first unranked
        CHECK(edges[2].position == 2);  // a->d second unranked
    }
}

TEST_CASE("fuzzed edge list matches a line-counting oracle") {
    Rng rng(7);
    std::string text;
    std::set<std::pair<int, int>> expected_edges;
    std::set<int> expected_nodes;
    for (int i = 0; i < 1000; ++i) {
        const int a = static_cast<int>(rng.bounded(40));
        const int b = static_cast<int>(rng.bounded(40));
        text += "n" + std::to_string(a) + "\tn" + std::to_string(b) + "\n";
        expected_nodes.insert(a);
        expected_nodes.insert(b);
        if (a != b) expected_edges.emplace(a, b);
    }
    const auto g = parse_edges(text);
    CHECK(g.node_count() == expected_nodes.size());
    CHECK(g.edge_count() == expected_edges.size());
}

TEST_CASE("clickstream parsing") {
    SUBCASE("single link row") {
        const auto c = parse_clicks("a\tb\tlink\t42\n");
        CHECK(c.get("a", "b") == 42.0);
    }
    SUBCASE("non-link rows are excluded") {
        const auto c = parse_clicks("a\tb\texternal\t42\nother-search\tb\tother\t7\n");
        CHECK(c.size() == 0);
    }
    SUBCASE("non-numeric count is an error") {
        CHECK_THROWS_AS(parse_clicks("a\tb\tlink\tmany\n"), ParseError);
        CHECK_THROWS_AS(parse_clicks("a\tb\tlink\t-5\n"), ParseError);
    }
    SUBCASE("monthly files average per pair") {
        const ClickCounts months[3] = {parse_clicks("a\tb\tlink\t10\n"),
                                       parse_clicks("a\tb\tlink\t20\n"),
                                       parse_clicks("a\tb\tlink\t30\n")};
        const auto avg = average_clickstreams(months);
        CHECK(avg.get("a", "b") == doctest::Approx(20.0));
    }
    SUBCASE("pairs absent from a month average over present months only") {
        const ClickCounts months[2] = {parse_clicks("a\tb\tlink\t10\na\tc\tlink\t12\n"),
                                       parse_clicks("a\tb\tlink\t30\n")};
        const auto avg = average_clickstreams(months);
        CHECK(avg.get("a", "b") == doctest::Approx(20.0));
        CHECK(avg.get("a", "c") == doctest::Approx(12.0));
    }
}

TEST_CASE("partition file parsing") {
    const auto spec = parse_partitions("a\tP\nb\tPBAR\nc\tP\nc\tPBAR\n");
    CHECK(spec.assignment.at("a") == Side::P);
    CHECK(spec.assignment.at("b") == Side::PBar);
    CHECK(spec.overlap.count("c") == 1);
    CHECK(spec.assignment.count("c") == 0);
    CHECK_THROWS_AS(parse_partitions("a\tLEFT\n"), ParseError);
}

TEST_CASE("partition mining") {
    const std::string cats_text =
        "Topic stance-a\tmember\ta1\n"
        "Topic stance-a\tmember\ta2\n"
        "Topic stance-a\tmember\ta3\n"
        "Topic stance-a\tsubcat\tTopic stance-a groups\n"
        "Topic stance-a\tsubcat\tUnrelated things\n"
        "Topic stance-a groups\tmember\ta4\n"
        "Unrelated things\tmember\tz1\n"
        "Topic stance-b\tmember\tb1\n"
        "Topic stance-b\tmember\ta2\n";
    const auto cats = parse_categories(cats_text);
    const std::vector<std::string> kw{"topic"};

    SUBCASE("seed members always included, keyworded subcats traversed") {
        const auto spec = mine_partitions(cats, "Topic stance-a", "Topic stance-b", kw, kw);
        CHECK(spec.assignment.at("a1") == Side::P);
        CHECK(spec.assignment.at("a3") == Side::P);
        CHECK(spec.assignment.at("a4") == Side::P);
        CHECK(spec.assignment.at("b1") == Side::PBar);
        CHECK(spec.assignment.count("z1") == 0);  // subcat lacks every keyword
        CHECK(spec.overlap.count("a2") == 1);     // claimed by both seeds
    }
    SUBCASE("seed with no subcategories keeps only its members") {
        const auto spec = mine_partitions(cats, "Topic stance-b", "Topic stance-a", kw, kw);
        CHECK(spec.count(Side::P) == 1);  // b1; a2 overlaps
    }
    SUBCASE("unknown seed is an error") {
        CHECK_THROWS_AS(mine_partitions(cats, "Nope", "Topic stance-b", kw, kw), DataError);
    }
    SUBCASE("keyword matching is case-insensitive") {
        const std::vector<std::string> upper{"TOPIC"};
        const auto spec = mine_partitions(cats, "Topic stance-a", "Topic stance-b", upper, upper);
        CHECK(spec.assignment.count("a4") == 1);
    }
}

TEST_CASE("partition mining matches a brute-force closure oracle") {
    // Two-level synthetic tree, fixed structure.
    CategoryGraph cats;
    std::vector<std::string> kw{"alpha", "beta"};
    for (int i = 0; i < 6; ++i) {
        const std::string sub =
            (i % 2 == 0 ? "alpha sub " : "misc sub ") + std::to_string(i);
        cats.add_subcategory("seedA", sub);
        for (int m = 0; m < 3; ++m)
            cats.add_member(sub, "art_" + std::to_string(i) + "_" + std::to_string(m));
    }
    cats.add_member("seedA", "root_article");
    cats.add_member("seedB", "other_root");

    const auto spec = mine_partitions(cats, "seedA", "seedB", kw, kw);

    // Independent recursive closure with the same admission rule.
    std::set<std::string> expect{"root_article"};
    for (int i = 0; i < 6; i += 2)
        for (int m = 0; m < 3; ++m)
            expect.insert("art_" + std::to_string(i) + "_" + std::to_string(m));

    std::set<std::string> got;
    for (const auto& [name, side] : spec.assignment)
        if (side == Side::P) got.insert(name);
    CHECK(got == expect);
}

TEST_CASE("mining is monotone in keywords") {
    Rng rng(5);
    CategoryGraph cats;
    const std::vector<std::string> words{"red", "green", "blue", "grey"};
    for (int i = 0; i < 30; ++i) {
        const std::string name = words[rng.bounded(words.size())] + " cat " + std::to_string(i);
        const std::string parent =
            i < 5 ? std::string("seed") : words[rng.bounded(words.size())] + " cat " +
                                              std::to_string(rng.bounded(i));
        cats.add_subcategory(parent, name);
        cats.add_member(name, "m" + std::to_string(i));
    }
    cats.add_member("seed", "seed_member");
    cats.add_member("other", "other_member");

    std::vector<std::string> kw;
    std::size_t last = 0;
    for (const std::string& w : words) {
        kw.push_back(w);
        const auto spec = mine_partitions(cats, "seed", "other", kw, kw);
        const std::size_t size = spec.count(Side::P) + spec.overlap.size();
        CHECK(size >= last);
        last = size;
    }
}

TEST_CASE("category cycles do not hang the traversal") {
    CategoryGraph cats;
    cats.add_subcategory("seed k", "loop k");
    cats.add_subcategory("loop k", "seed k");
    cats.add_member("loop k", "m1");
    cats.add_member("other", "m2");
    const std::vector<std::string> kw{"k"};
    const auto spec = mine_partitions(cats, "seed k", "other", kw, kw);
    CHECK(spec.assignment.count("m1") == 1);
}

TEST_CASE("topic network construction") {
    SUBCASE("chain: one-hop in-neighbor becomes NEIGHBOR, no super edges") {
        const auto raw = parse_edges("x\tp\np\tq\n");
        const auto spec = parse_partitions("p\tP\nq\tPBAR\n");
        const auto g = build_topic_network(raw, spec);
        CHECK(g.node_count() == 4);  // x, p, q, super
        CHECK(g.label(*g.find("x")) == NodeLabel::Neighbor);
        CHECK(g.out_degree(g.super_node()) == 0);
        CHECK(g.in_degree(g.super_node()) == 0);
    }
    SUBCASE("two-hop nodes contract into the super node, edges compressed") {
        // z sits two hops from T; five parallel paths n->z* compress to one n->s.
        std::string text = "p\tq\np\tn\nn\tp\n";
        for (int i = 0; i < 5; ++i) text += "n\tz" + std::to_string(i) + "\n";
        const auto raw = parse_edges(text);
        const auto spec = parse_partitions("p\tP\nq\tPBAR\n");
        const auto g = build_topic_network(raw, spec);
        CHECK(!g.find("z0").has_value());
        const NodeId n = *g.find("n");
        const NodeId s = g.super_node();
        CHECK(g.has_edge(n, s));
        std::size_t n_to_s = 0;
        for (NodeId w : g.out_neighbors(n))
            if (w == s) ++n_to_s;
        CHECK(n_to_s == 1);
        // no exterior->n edges existed, so the super out-row is the
        // synthetic backflow into the neighborhood
        REQUIRE(g.out_degree(s) == 1);
        CHECK(g.out_neighbors(s)[0] == n);
    }
    SUBCASE("compression keeps min position and sums clicks") {
        const auto raw = parse_edges(
            "p\tq\t0\n"
            "p\tn\t1\n"
            "n\tz1\t4\n"
            "n\tz2\t2\n"
            "n\tp\t0\n"
            "z9\tn\t3\n");
        const auto spec = parse_partitions("p\tP\nq\tPBAR\n");
        ClickCounts clicks;
        clicks.set("n", "z1", 30.0);
        clicks.set("n", "z2", 12.0);
        clicks.set("z9", "n", 5.0);
        const auto g = build_topic_network(raw, spec, &clicks);
        const NodeId n = *g.find("n");
        const NodeId s = g.super_node();
        const auto row = g.out_neighbors(n);
        const auto pos = g.out_positions(n);
        const auto clk = g.out_clicks(n);
        bool checked = false;
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] == s) {
                CHECK(pos[k] == 2);            // min(4, 2)
                CHECK(clk[k] == 42.0);         // 30 + 12
                checked = true;
            }
        }
        CHECK(checked);
        CHECK(g.out_clicks(s)[0] == 5.0);
    }
    SUBCASE("missing partition names are skipped with warnings") {
        const auto raw = parse_edges("p\tq\n");
        const auto spec = parse_partitions("p\tP\nq\tPBAR\nghost\tP\n");
        std::vector<std::string> warnings;
        const auto g = build_topic_network(raw, spec, nullptr, &warnings);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("ghost") != std::string::npos);
        CHECK(g.count_nodes(NodeLabel::P) == 1);
    }
    SUBCASE("empty side after resolution is an error") {
        const auto raw = parse_edges("p\tq\n");
        const auto spec = parse_partitions("p\tP\nghost\tPBAR\n");
        CHECK_THROWS_AS(build_topic_network(raw, spec), DataError);
    }
    SUBCASE("overlap names become NEIGHBOR") {
        const auto raw = parse_edges("p\tq\np\tboth\nboth\tq\n");
        const auto spec = parse_partitions("p\tP\nq\tPBAR\nboth\tP\nboth\tPBAR\n");
        const auto g = build_topic_network(raw, spec);
        CHECK(g.label(*g.find("both")) == NodeLabel::Neighbor);
    }
    SUBCASE("dangling NEIGHBOR nodes get a synthetic edge to super") {
        const auto raw = parse_edges("p\tq\np\tdeadend\n");
        const auto spec = parse_partitions("p\tP\nq\tPBAR\n");
        const auto g = build_topic_network(raw, spec);
        const NodeId deadend = *g.find("deadend");
        CHECK(g.label(deadend) == NodeLabel::Neighbor);
        CHECK(g.has_edge(deadend, g.super_node()));
        // super got inbound mass and no outbound compression: routed back
        CHECK(g.out_degree(g.super_node()) == g.count_nodes(NodeLabel::Neighbor));
    }
}

TEST_CASE("construction matches a set-algebra oracle on a synthetic graph") {
    Rng rng(31);
    const int n = 200;
    std::string edges_text;
    std::vector<std::pair<int, int>> raw_pairs;
    std::unordered_set<std::uint64_t> seen;
    for (int i = 0; i < 900; ++i) {
        const int a = static_cast<int>(rng.bounded(n));
        const int b = static_cast<int>(rng.bounded(n));
        if (a == b) continue;
        if (!seen.insert((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b))
                 .second)
            continue;
        raw_pairs.emplace_back(a, b);
        edges_text += "w" + std::to_string(a) + "\tw" + std::to_string(b) + "\n";
    }
    std::string part_text;
    std::set<int> in_p, in_q;
    for (int i = 0; i < 12; ++i) in_p.insert(static_cast<int>(rng.bounded(n)));
    for (int i = 0; i < 12; ++i) {
        const int v = static_cast<int>(rng.bounded(n));
        if (!in_p.count(v)) in_q.insert(v);
    }
    REQUIRE(!in_p.empty());
    REQUIRE(!in_q.empty());
    for (int v : in_p) part_text += "w" + std::to_string(v) + "\tP\n";
    for (int v : in_q) part_text += "w" + std::to_string(v) + "\tPBAR\n";

    const auto raw = parse_edges(edges_text);
    const auto spec = parse_partitions(part_text);
    const auto g = build_topic_network(raw, spec);

    // Independent set-algebra construction of the label multiset.
    std::set<int> topic;
    topic.insert(in_p.begin(), in_p.end());
    topic.insert(in_q.begin(), in_q.end());
    std::set<int> nbhd;
    std::set<int> present;  // nodes that appear in the edge list at all
    for (const auto& [a, b] : raw_pairs) {
        present.insert(a);
        present.insert(b);
        if (topic.count(a) && !topic.count(b)) nbhd.insert(b);
        if (topic.count(b) && !topic.count(a)) nbhd.insert(a);
    }
    std::size_t expect_p = 0, expect_q = 0;
    for (int v : in_p)
        if (present.count(v)) ++expect_p;
    for (int v : in_q)
        if (present.count(v)) ++expect_q;

    CHECK(g.count_nodes(NodeLabel::P) == expect_p);
    CHECK(g.count_nodes(NodeLabel::PBar) == expect_q);
    CHECK(g.count_nodes(NodeLabel::Neighbor) == nbhd.size());

    // Block counts among topic labels must match a raw tally.
    auto side_of = [&](int v) -> int {
        if (in_p.count(v) && present.count(v)) return 0;
        if (in_q.count(v) && present.count(v)) return 1;
        return -1;
    };
    std::int64_t pq = 0, qp = 0;
    for (const auto& [a, b] : raw_pairs) {
        if (side_of(a) == 0 && side_of(b) == 1) ++pq;
        if (side_of(a) == 1 && side_of(b) == 0) ++qp;
    }
    const auto counts = block_edge_counts(g);
    CHECK(counts.count(NodeLabel::P, NodeLabel::PBar) == pq);
    CHECK(counts.count(NodeLabel::PBar, NodeLabel::P) == qp);

    // Every NEIGHBOR sits at undirected hop distance exactly 1 from T.
    for (NodeId v : g.nodes_in(NodeLabel::Neighbor)) {
        bool adjacent = false;
        for (NodeId w : g.out_neighbors(v))
            if (g.label(w) == NodeLabel::P || g.label(w) == NodeLabel::PBar) adjacent = true;
        for (NodeId w : g.in_neighbors(v))
            if (g.label(w) == NodeLabel::P || g.label(w) == NodeLabel::PBar) adjacent = true;
        CHECK(adjacent);
    }
}

TEST_CASE("construction is deterministic: identical inputs, identical bytes") {
    const std::string edges_text = "b\ta\t1\na\tc\t0\nc\tb\t2\nd\ta\t0\na\td\t1\nz\td\t0\n";
    const std::string part_text = "a\tP\nb\tPBAR\nc\tPBAR\n";
    const auto build = [&]() {
        auto raw = parse_edges(edges_text);
        auto spec = parse_partitions(part_text);
        spec.topic = "t";
        return serialize_network(build_topic_network(raw, spec));
    };
    CHECK(build() == build());
}

TEST_SUITE_END();
