#include "wikinav/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>

#include "wikinav/errors.hpp"

namespace wikinav {

namespace {

// Splits a data line on tabs. Returns false for lines to skip
// (empty or '#' comment).
bool split_line(std::string& line, std::vector<std::string_view>& fields) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') return false;
    fields.clear();
    std::size_t start = 0;
    for (;;) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(std::string_view(line).substr(start));
            return true;
        }
        fields.push_back(std::string_view(line).substr(start, tab - start));
        start = tab + 1;
    }
}

std::int64_t parse_rank(std::string_view s, std::size_t line_no) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || value < 0)
        throw ParseError("position rank must be a non-negative integer, got '" +
                             std::string(s) + "'",
                         line_no);
    return value;
}

double parse_count(std::string_view s, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("count must be numeric, got '" + std::string(s) + "'", line_no);
    if (value < 0.0) throw ParseError("count must be non-negative", line_no);
    return value;
}

void check_name(std::string_view name, std::size_t line_no) {
    if (name.empty()) throw ParseError("empty node name", line_no);
}

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::uint32_t RawGraph::intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
}

std::optional<std::uint32_t> RawGraph::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

RawGraph parse_edge_list(std::istream& in) {
    RawGraph g;
    // (src<<32 | dst) -> index into g.edges()
    std::unordered_map<std::uint64_t, std::size_t> seen;
    std::vector<std::string_view> fields;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!split_line(line, fields)) continue;
        if (fields.size() != 2 && fields.size() != 3)
            throw ParseError("expected 'src\\tdst[\\tposition]', got " +
                                 std::to_string(fields.size()) + " fields",
                             line_no);
        check_name(fields[0], line_no);
        check_name(fields[1], line_no);
        const std::uint32_t src = g.intern(fields[0]);
        const std::uint32_t dst = g.intern(fields[1]);
        if (src == dst) continue;  // links within the same page are excluded

        std::int64_t pos = kNoPosition;
        if (fields.size() == 3 && !fields[2].empty()) pos = parse_rank(fields[2], line_no);

        const std::uint64_t key = (static_cast<std::uint64_t>(src) << 32) | dst;
        auto [it, inserted] = seen.emplace(key, g.edges().size());
        if (inserted) {
            g.edges().push_back(RawEdge{src, dst, pos});
        } else if (pos != kNoPosition) {
            RawEdge& e = g.edges()[it->second];
            if (e.position == kNoPosition || pos < e.position) e.position = pos;
        }
    }

    // Edges without an explicit rank go to the end of the page, in file
    // order of appearance per source.
    std::unordered_map<std::uint32_t, std::int64_t> next_rank;
    for (const RawEdge& e : g.edges()) {
        if (e.position == kNoPosition) continue;
        auto [it, inserted] = next_rank.emplace(e.src, e.position + 1);
        if (!inserted && e.position + 1 > it->second) it->second = e.position + 1;
    }
    for (RawEdge& e : g.edges()) {
        if (e.position != kNoPosition) continue;
        auto [it, inserted] = next_rank.emplace(e.src, 0);
        e.position = it->second;
        ++it->second;
    }
    return g;
}

std::size_t PartitionSpec::count(Side s) const {
    std::size_t c = 0;
    for (const auto& [name, side] : assignment)
        if (side == s) ++c;
    return c;
}

PartitionSpec parse_partition_file(std::istream& in) {
    PartitionSpec spec;
    std::vector<std::string_view> fields;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!split_line(line, fields)) continue;
        if (fields.size() != 2)
            throw ParseError("expected 'name\\t{P|PBAR}'", line_no);
        check_name(fields[0], line_no);
        Side side;
        if (fields[1] == "P") {
            side = Side::P;
        } else if (fields[1] == "PBAR") {
            side = Side::PBar;
        } else {
            throw ParseError("partition must be P or PBAR, got '" + std::string(fields[1]) + "'",
                             line_no);
        }
        const std::string name(fields[0]);
        if (spec.overlap.count(name)) continue;
        auto [it, inserted] = spec.assignment.emplace(name, side);
        if (!inserted && it->second != side) {
            spec.assignment.erase(it);
            spec.overlap.insert(name);
        }
    }
    return spec;
}

ClickCounts parse_clickstream(std::istream& in) {
    ClickCounts counts;
    std::vector<std::string_view> fields;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!split_line(line, fields)) continue;
        if (fields.size() != 4)
            throw ParseError("expected 'prev\\tcurr\\ttype\\tn'", line_no);
        if (fields[2] != "link") continue;
        check_name(fields[0], line_no);
        check_name(fields[1], line_no);
        const double n = parse_count(fields[3], line_no);
        counts.accumulate(std::string(fields[0]), std::string(fields[1]), n);
    }
    return counts;
}

ClickCounts average_clickstreams(std::span<const ClickCounts> months) {
    ClickCounts out;
    if (months.empty()) return out;
    std::unordered_map<std::string, std::pair<double, int>> acc;
    for (const ClickCounts& month : months) {
        for (const auto& [key, value] : month.entries()) {
            auto& slot = acc[key];
            slot.first += value;
            slot.second += 1;
        }
    }
    for (const auto& [key, slot] : acc) out.set_raw(key, slot.first / slot.second);
    return out;
}

void CategoryGraph::add_subcategory(const std::string& parent, const std::string& child) {
    subcats_[parent].push_back(child);
    categories_.insert(parent);
    categories_.insert(child);
}

void CategoryGraph::add_member(const std::string& category, const std::string& article) {
    members_[category].push_back(article);
    categories_.insert(category);
}

bool CategoryGraph::has_category(const std::string& name) const {
    return categories_.count(name) > 0;
}

std::span<const std::string> CategoryGraph::subcategories(const std::string& name) const {
    auto it = subcats_.find(name);
    if (it == subcats_.end()) return {};
    return it->second;
}

std::span<const std::string> CategoryGraph::members(const std::string& name) const {
    auto it = members_.find(name);
    if (it == members_.end()) return {};
    return it->second;
}

CategoryGraph parse_category_file(std::istream& in) {
    CategoryGraph cats;
    std::vector<std::string_view> fields;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!split_line(line, fields)) continue;
        if (fields.size() != 3)
            throw ParseError("expected 'parent\\t{subcat|member}\\tchild'", line_no);
        check_name(fields[0], line_no);
        check_name(fields[2], line_no);
        if (fields[1] == "subcat") {
            cats.add_subcategory(std::string(fields[0]), std::string(fields[2]));
        } else if (fields[1] == "member") {
            cats.add_member(std::string(fields[0]), std::string(fields[2]));
        } else {
            throw ParseError("relation must be 'subcat' or 'member', got '" +
                                 std::string(fields[1]) + "'",
                             line_no);
        }
    }
    return cats;
}

namespace {

// Keyword-filtered closure: descend into a subcategory only if its name
// matches a keyword; discarded subtrees are not explored further.
std::unordered_set<std::string> mine_side(const CategoryGraph& cats, const std::string& seed,
                                          std::span<const std::string> keywords) {
    std::vector<std::string> lowered;
    lowered.reserve(keywords.size());
    for (const std::string& k : keywords) lowered.push_back(lower_ascii(k));

    auto admitted = [&](const std::string& category) {
        const std::string lc = lower_ascii(category);
        for (const std::string& k : lowered)
            if (!k.empty() && lc.find(k) != std::string::npos) return true;
        return false;
    };

    std::unordered_set<std::string> articles;
    std::unordered_set<std::string> visited{seed};
    std::deque<std::string> frontier{seed};
    while (!frontier.empty()) {
        const std::string cat = std::move(frontier.front());
        frontier.pop_front();
        for (const std::string& article : cats.members(cat)) articles.insert(article);
        for (const std::string& sub : cats.subcategories(cat)) {
            if (visited.count(sub) || !admitted(sub)) continue;
            visited.insert(sub);
            frontier.push_back(sub);
        }
    }
    return articles;
}

}  // namespace

PartitionSpec mine_partitions(const CategoryGraph& cats, const std::string& seed_p,
                              const std::string& seed_pbar,
                              std::span<const std::string> keywords_p,
                              std::span<const std::string> keywords_pbar) {
    if (!cats.has_category(seed_p)) throw DataError("unknown seed category: '" + seed_p + "'");
    if (!cats.has_category(seed_pbar))
        throw DataError("unknown seed category: '" + seed_pbar + "'");

    const auto side_p = mine_side(cats, seed_p, keywords_p);
    const auto side_pbar = mine_side(cats, seed_pbar, keywords_pbar);

    PartitionSpec spec;
    spec.label_p = seed_p;
    spec.label_pbar = seed_pbar;
    for (const std::string& a : side_p) {
        if (side_pbar.count(a)) {
            spec.overlap.insert(a);
        } else {
            spec.assignment.emplace(a, Side::P);
        }
    }
    for (const std::string& a : side_pbar) {
        if (!side_p.count(a)) spec.assignment.emplace(a, Side::PBar);
    }
    return spec;
}

namespace {

struct CompressedEdge {
    std::int64_t min_position = kNoPosition;
    double click_sum = kNoClicks;

    void merge(std::int64_t position, double clicks) {
        if (position != kNoPosition &&
            (min_position == kNoPosition || position < min_position))
            min_position = position;
        if (clicks != kNoClicks) click_sum = (click_sum == kNoClicks ? 0.0 : click_sum) + clicks;
    }
};

}  // namespace

TopicInducedNetwork build_topic_network(const RawGraph& raw, const PartitionSpec& spec,
                                        const ClickCounts* clicks,
                                        std::vector<std::string>* warnings) {
    const std::size_t raw_n = raw.node_count();

    // 0 = exterior, 1 = P, 2 = PBAR, 3 = NEIGHBOR (resolution phase only)
    std::vector<std::uint8_t> mark(raw_n, 0);
    std::vector<std::string> missing;
    std::size_t resolved_p = 0;
    std::size_t resolved_pbar = 0;

    for (const auto& [name, side] : spec.assignment) {
        const auto id = raw.find(name);
        if (!id) {
            missing.push_back(name);
            continue;
        }
        mark[*id] = side == Side::P ? 1 : 2;
        (side == Side::P ? resolved_p : resolved_pbar) += 1;
    }
    for (const std::string& name : spec.overlap) {
        const auto id = raw.find(name);
        if (!id) {
            missing.push_back(name);
            continue;
        }
        mark[*id] = 3;
    }
    if (warnings) {
        std::sort(missing.begin(), missing.end());
        for (const std::string& name : missing)
            warnings->push_back("partition name not found in edge list, skipped: '" + name + "'");
    }
    if (resolved_p == 0) throw DataError("partition P is empty after name resolution");
    if (resolved_pbar == 0) throw DataError("partition PBAR is empty after name resolution");

    // One-hop neighborhood of the topic set, both directions.
    for (const RawEdge& e : raw.edges()) {
        const bool src_topic = mark[e.src] == 1 || mark[e.src] == 2;
        const bool dst_topic = mark[e.dst] == 1 || mark[e.dst] == 2;
        if (src_topic && mark[e.dst] == 0) mark[e.dst] = 3;
        if (dst_topic && mark[e.src] == 0) mark[e.src] = 3;
    }

    // Dense ids in lexicographic name order so identical inputs always
    // produce bit-identical networks; SUPER takes the last id.
    std::vector<std::uint32_t> kept;
    for (std::uint32_t v = 0; v < raw_n; ++v)
        if (mark[v] != 0) kept.push_back(v);
    std::sort(kept.begin(), kept.end(), [&](std::uint32_t a, std::uint32_t b) {
        return raw.name(a) < raw.name(b);
    });

    NetworkBuilder builder;
    builder.set_meta(NetworkMeta{spec.topic, spec.label_p, spec.label_pbar});
    std::vector<NodeId> dense(raw_n, 0);
    for (std::uint32_t v : kept) {
        if (raw.name(v) == kSuperNodeName)
            throw DataError(std::string("node name collides with the reserved super-node name '") +
                            kSuperNodeName + "'");
        const NodeLabel label = mark[v] == 1   ? NodeLabel::P
                                : mark[v] == 2 ? NodeLabel::PBar
                                               : NodeLabel::Neighbor;
        dense[v] = builder.add_node(raw.name(v), label);
    }
    const NodeId super_id = builder.add_node(kSuperNodeName, NodeLabel::Super);

    auto click_for = [&](std::uint32_t src, std::uint32_t dst) -> double {
        if (!clicks) return kNoClicks;
        const auto c = clicks->get(raw.name(src), raw.name(dst));
        return c ? *c : kNoClicks;
    };

    // map keyed by dense id keeps compressed-edge emission deterministic
    std::map<NodeId, CompressedEdge> to_super;
    std::map<NodeId, CompressedEdge> from_super;
    std::vector<bool> has_out(kept.size() + 1, false);

    for (const RawEdge& e : raw.edges()) {
        const bool src_kept = mark[e.src] != 0;
        const bool dst_kept = mark[e.dst] != 0;
        if (src_kept && dst_kept) {
            builder.add_edge(dense[e.src], dense[e.dst], e.position, click_for(e.src, e.dst));
            has_out[dense[e.src]] = true;
        } else if (src_kept) {
            to_super[dense[e.src]].merge(e.position, click_for(e.src, e.dst));
            has_out[dense[e.src]] = true;
        } else if (dst_kept) {
            from_super[dense[e.dst]].merge(e.position, click_for(e.src, e.dst));
        }
        // exterior-to-exterior edges vanish inside the super node
    }

    for (const auto& [v, agg] : to_super)
        builder.add_edge(v, super_id, agg.min_position, agg.click_sum);
    for (const auto& [v, agg] : from_super) builder.add_edge(super_id, v, agg.min_position, agg.click_sum);

    // Clipped inputs can leave NEIGHBOR pages without out-links; their
    // forward mass belongs to the rest of the network.
    std::vector<NodeId> neighbor_ids;
    for (std::uint32_t v : kept)
        if (mark[v] == 3) neighbor_ids.push_back(dense[v]);
    std::sort(neighbor_ids.begin(), neighbor_ids.end());
    bool synthetic_into_super = false;
    for (std::uint32_t v : kept) {
        if (mark[v] == 3 && !has_out[dense[v]]) {
            builder.add_edge(dense[v], super_id, 0);
            synthetic_into_super = true;
        }
    }

    // A super node with inbound mass but no outbound links would trap it;
    // route it uniformly back into the neighborhood. Inbound super edges
    // only ever originate from NEIGHBOR nodes, so the target set is
    // non-empty whenever this triggers.
    const bool super_has_in = !to_super.empty() || synthetic_into_super;
    if (from_super.empty() && super_has_in) {
        std::int64_t rank = 0;
        for (NodeId v : neighbor_ids) builder.add_edge(super_id, v, rank++);
    }

    return builder.build();
}

}  // namespace wikinav
