#include "wikinav/fixture.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>
#include <vector>

#include "wikinav/errors.hpp"
#include "wikinav/rng.hpp"

namespace wikinav {

namespace {

struct GenEdge {
    std::uint32_t src;
    std::uint32_t dst;
    std::int64_t pos = 0;
};

std::string make_name(const char* prefix, int i, int width) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, i);
    return buf;
}

int name_width(int count) {
    int w = 1;
    for (int c = count; c >= 10; c /= 10) ++w;
    return w;
}

}  // namespace

FixtureFiles generate_fixture(const FixtureParams& params) {
    if (params.p_nodes < 1 || params.pbar_nodes < 1)
        throw ConfigError("fixture needs at least one node per partition");
    if (params.neighbor_nodes < 0 || params.exterior_nodes < 0)
        throw ConfigError("node counts must be non-negative");
    if (params.exterior_nodes > 0 && params.neighbor_nodes == 0)
        throw ConfigError("exterior pages attach to neighbors; set neighbor_nodes > 0");
    if (!(params.mean_out_degree >= 1.0))
        throw ConfigError("mean out-degree must be at least 1");
    if (params.across_p < 0.0 || params.across_p > 1.0)
        throw ConfigError("across fraction must lie in [0,1]");
    const double across_pbar = params.across_pbar < 0.0 ? params.across_p : params.across_pbar;
    if (across_pbar > 1.0) throw ConfigError("across fraction must lie in [0,1]");
    if (params.click_coverage < 0.0 || params.click_coverage > 1.0)
        throw ConfigError("click coverage must lie in [0,1]");

    const int np = params.p_nodes;
    const int nq = params.pbar_nodes;
    const int nn = params.neighbor_nodes;
    const int nx = params.exterior_nodes;
    const std::uint32_t total = static_cast<std::uint32_t>(np + nq + nn + nx);

    std::vector<std::string> names;
    names.reserve(total);
    const int wp = name_width(np), wq = name_width(nq);
    const int wn = nn > 0 ? name_width(nn) : 1, wx = nx > 0 ? name_width(nx) : 1;
    for (int i = 0; i < np; ++i) names.push_back(make_name("p", i, wp));
    for (int i = 0; i < nq; ++i) names.push_back(make_name("q", i, wq));
    for (int i = 0; i < nn; ++i) names.push_back(make_name("n", i, wn));
    for (int i = 0; i < nx; ++i) names.push_back(make_name("x", i, wx));

    auto p_id = [&](int i) { return static_cast<std::uint32_t>(i); };
    auto q_id = [&](int i) { return static_cast<std::uint32_t>(np + i); };
    auto n_id = [&](int i) { return static_cast<std::uint32_t>(np + nq + i); };
    auto x_id = [&](int i) { return static_cast<std::uint32_t>(np + nq + nn + i); };

    Rng rng(params.seed);
    std::vector<GenEdge> edges;
    std::unordered_set<std::uint64_t> seen;
    auto key = [](std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    auto try_add = [&](std::uint32_t src, std::uint32_t dst) {
        if (src == dst) return false;
        if (!seen.insert(key(src, dst)).second) return false;
        edges.push_back(GenEdge{src, dst});
        return true;
    };

    auto draw_degree = [&](double mean) {
        const std::uint64_t span = static_cast<std::uint64_t>(2.0 * mean - 1.0);
        return 1 + static_cast<int>(rng.bounded(span == 0 ? 1 : span));
    };

    // Topic blocks: each node draws its out-degree around the mean and routes
    // each link across with the configured probability.
    for (int side = 0; side < 2; ++side) {
        const int count = side == 0 ? np : nq;
        const int other_count = side == 0 ? nq : np;
        const double across = side == 0 ? params.across_p : across_pbar;
        for (int i = 0; i < count; ++i) {
            const std::uint32_t src = side == 0 ? p_id(i) : q_id(i);
            const int degree = draw_degree(params.mean_out_degree);
            for (int e = 0; e < degree; ++e) {
                for (int attempt = 0; attempt < 32; ++attempt) {
                    const bool cross = rng.real01() < across;
                    std::uint32_t dst;
                    if (cross) {
                        const int j = static_cast<int>(rng.bounded(other_count));
                        dst = side == 0 ? q_id(j) : p_id(j);
                    } else {
                        const int j = static_cast<int>(rng.bounded(count));
                        dst = side == 0 ? p_id(j) : q_id(j);
                    }
                    if (try_add(src, dst)) break;
                }
            }
        }
    }

    // Neighbors exchange links with the topic set (both directions keep them
    // at one-hop distance) and with each other.
    for (int i = 0; i < nn; ++i) {
        const std::uint32_t v = n_id(i);
        const int degree = draw_degree(params.neighbor_mean_degree);
        for (int e = 0; e < degree; ++e) {
            for (int attempt = 0; attempt < 32; ++attempt) {
                const double which = rng.real01();
                std::uint32_t dst;
                if (which < 0.3) {
                    const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(np + nq)));
                    dst = static_cast<std::uint32_t>(j);
                } else if (nn > 1) {
                    dst = n_id(static_cast<int>(rng.bounded(nn)));
                } else {
                    const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(np + nq)));
                    dst = static_cast<std::uint32_t>(j);
                }
                if (try_add(v, dst)) break;
            }
        }
        // inbound anchor keeps v at one-hop distance; an existing edge
        // anchors it just as well
        const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(np + nq)));
        try_add(static_cast<std::uint32_t>(j), v);
    }

    // Exterior pages trade links with neighbors only.
    for (int i = 0; i < nx; ++i) {
        const std::uint32_t v = x_id(i);
        const int out_links = 1 + static_cast<int>(rng.bounded(2));
        for (int e = 0; e < out_links; ++e) {
            for (int attempt = 0; attempt < 32; ++attempt)
                if (try_add(v, n_id(static_cast<int>(rng.bounded(nn))))) break;
        }
        const std::uint32_t from = n_id(static_cast<int>(rng.bounded(nn)));
        try_add(from, v);
    }

    // Page-order ranks: shuffle each page's links, rank top to bottom.
    {
        std::vector<std::vector<std::size_t>> by_src(total);
        for (std::size_t idx = 0; idx < edges.size(); ++idx)
            by_src[edges[idx].src].push_back(idx);
        for (std::uint32_t v = 0; v < total; ++v) {
            auto& page = by_src[v];
            rng.shuffle(page);
            for (std::size_t r = 0; r < page.size(); ++r)
                edges[page[r]].pos = static_cast<std::int64_t>(r);
        }
    }

    FixtureFiles files;
    char buf[160];

    files.edges_tsv = "# src\tdst\tposition\n";
    for (const GenEdge& e : edges) {
        std::snprintf(buf, sizeof(buf), "%s\t%s\t%lld\n", names[e.src].c_str(),
                      names[e.dst].c_str(), static_cast<long long>(e.pos));
        files.edges_tsv += buf;
    }

    files.partitions_tsv = "# name\tside\n";
    for (int i = 0; i < np; ++i) files.partitions_tsv += names[p_id(i)] + "\tP\n";
    for (int i = 0; i < nq; ++i) files.partitions_tsv += names[q_id(i)] + "\tPBAR\n";

    // Clickstream rows follow the public layout; counts respect the
    // inclusion threshold of 10.
    files.clickstream_tsv = "# prev\tcurr\ttype\tn\n";
    for (const GenEdge& e : edges) {
        if (rng.real01() >= params.click_coverage) continue;
        const long long count = 10 + static_cast<long long>(rng.bounded(90));
        std::snprintf(buf, sizeof(buf), "%s\t%s\tlink\t%lld\n", names[e.src].c_str(),
                      names[e.dst].c_str(), count);
        files.clickstream_tsv += buf;
    }

    // Two-level category tree whose filtered closure reproduces the
    // partitions: seeds hold the first half of each side directly, a
    // keyword-named subcategory holds the rest.
    const std::string seed_p = params.topic + " stance-a";
    const std::string seed_q = params.topic + " stance-b";
    const std::string sub_p = params.topic + " stance-a organizations";
    const std::string sub_q = params.topic + " stance-b organizations";
    files.categories_tsv = "# parent\trelation\tchild\n";
    files.categories_tsv += seed_p + "\tsubcat\t" + sub_p + "\n";
    files.categories_tsv += seed_q + "\tsubcat\t" + sub_q + "\n";
    for (int i = 0; i < np; ++i) {
        const std::string& cat = i < (np + 1) / 2 ? seed_p : sub_p;
        files.categories_tsv += cat + "\tmember\t" + names[p_id(i)] + "\n";
    }
    for (int i = 0; i < nq; ++i) {
        const std::string& cat = i < (nq + 1) / 2 ? seed_q : sub_q;
        files.categories_tsv += cat + "\tmember\t" + names[q_id(i)] + "\n";
    }
    return files;
}

}  // namespace wikinav
