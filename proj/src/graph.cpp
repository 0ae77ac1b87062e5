#include "wikinav/graph.hpp"

#include <algorithm>

#include "wikinav/errors.hpp"

namespace wikinav {

const char* to_string(NodeLabel label) {
    switch (label) {
        case NodeLabel::P: return "P";
        case NodeLabel::PBar: return "PBAR";
        case NodeLabel::Neighbor: return "NEIGHBOR";
        case NodeLabel::Super: return "SUPER";
    }
    return "?";
}

std::optional<NodeLabel> label_from_string(std::string_view s) {
    if (s == "P") return NodeLabel::P;
    if (s == "PBAR") return NodeLabel::PBar;
    if (s == "NEIGHBOR") return NodeLabel::Neighbor;
    if (s == "SUPER") return NodeLabel::Super;
    return std::nullopt;
}

std::int64_t BlockEdgeCounts::total() const {
    std::int64_t t = 0;
    for (const auto& row : counts)
        for (std::int64_t c : row) t += c;
    return t;
}

NodeId NetworkBuilder::add_node(std::string name, NodeLabel label) {
    if (name.empty()) throw DataError("node name must be non-empty");
    if (name.find('\t') != std::string::npos || name.find('\n') != std::string::npos)
        throw DataError("node name must not contain tab or newline: '" + name + "'");
    names_.push_back(std::move(name));
    labels_.push_back(label);
    return static_cast<NodeId>(names_.size() - 1);
}

void NetworkBuilder::add_edge(NodeId src, NodeId dst, std::int64_t position, double clicks) {
    edges_.push_back(EdgeRecord{src, dst, position, clicks});
}

TopicInducedNetwork NetworkBuilder::build(bool check_super_adjacency) {
    const std::size_t n = names_.size();
    if (n == 0) throw DataError("network must contain at least one node");

    TopicInducedNetwork g;
    g.meta_ = std::move(meta_);

    std::size_t super_count = 0;
    NodeId super = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (labels_[v] == NodeLabel::Super) {
            ++super_count;
            super = static_cast<NodeId>(v);
        }
        auto [it, inserted] = g.index_.emplace(names_[v], static_cast<NodeId>(v));
        if (!inserted) throw DataError("duplicate node name: '" + names_[v] + "'");
    }
    if (super_count != 1)
        throw DataError("network must contain exactly one SUPER node, found " +
                        std::to_string(super_count));
    g.super_ = super;

    for (const EdgeRecord& e : edges_) {
        if (e.src >= n || e.dst >= n) throw DataError("edge endpoint out of range");
        if (e.src == e.dst)
            throw DataError("self-loop on node '" + names_[e.src] + "'");
        if (e.position < kNoPosition)
            throw DataError("negative position rank on edge from '" + names_[e.src] + "'");
        if (e.clicks < 0.0 && e.clicks != kNoClicks)
            throw DataError("negative click count on edge from '" + names_[e.src] + "'");
        if (check_super_adjacency) {
            if (e.src == super && labels_[e.dst] != NodeLabel::Neighbor)
                throw DataError("SUPER node may only link to NEIGHBOR nodes, found edge to '" +
                                names_[e.dst] + "'");
            if (e.dst == super && labels_[e.src] != NodeLabel::Neighbor)
                throw DataError("only NEIGHBOR nodes may link to the SUPER node, found edge from '" +
                                names_[e.src] + "'");
        }
    }

    std::sort(edges_.begin(), edges_.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].src == edges_[i - 1].src && edges_[i].dst == edges_[i - 1].dst)
            throw DataError("duplicate edge '" + names_[edges_[i].src] + "' -> '" +
                            names_[edges_[i].dst] + "'");
    }

    const std::size_t m = edges_.size();
    g.names_ = std::move(names_);
    g.labels_ = std::move(labels_);
    g.out_ptr_.assign(n + 1, 0);
    g.out_dst_.resize(m);
    g.out_pos_.resize(m);
    g.out_clk_.resize(m);
    for (const EdgeRecord& e : edges_) ++g.out_ptr_[e.src + 1];
    for (std::size_t v = 0; v < n; ++v) g.out_ptr_[v + 1] += g.out_ptr_[v];
    for (std::size_t i = 0; i < m; ++i) {
        g.out_dst_[i] = edges_[i].dst;
        g.out_pos_[i] = edges_[i].position;
        g.out_clk_[i] = edges_[i].clicks;
    }

    g.in_ptr_.assign(n + 1, 0);
    g.in_src_.resize(m);
    for (const EdgeRecord& e : edges_) ++g.in_ptr_[e.dst + 1];
    for (std::size_t v = 0; v < n; ++v) g.in_ptr_[v + 1] += g.in_ptr_[v];
    std::vector<std::size_t> cursor(g.in_ptr_.begin(), g.in_ptr_.end() - 1);
    for (const EdgeRecord& e : edges_) g.in_src_[cursor[e.dst]++] = e.src;
    for (std::size_t v = 0; v < n; ++v)
        std::sort(g.in_src_.begin() + static_cast<std::ptrdiff_t>(g.in_ptr_[v]),
                  g.in_src_.begin() + static_cast<std::ptrdiff_t>(g.in_ptr_[v + 1]));

    edges_.clear();
    return g;
}

NodeLabel TopicInducedNetwork::label(NodeId v) const {
    check_node(v);
    return labels_[v];
}

const std::string& TopicInducedNetwork::name(NodeId v) const {
    check_node(v);
    return names_[v];
}

std::optional<NodeId> TopicInducedNetwork::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<NodeId> TopicInducedNetwork::nodes_in(NodeLabel label) const {
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < labels_.size(); ++v)
        if (labels_[v] == label) out.push_back(static_cast<NodeId>(v));
    return out;
}

std::size_t TopicInducedNetwork::count_nodes(NodeLabel label) const {
    std::size_t c = 0;
    for (NodeLabel l : labels_)
        if (l == label) ++c;
    return c;
}

std::size_t TopicInducedNetwork::out_degree(NodeId v) const {
    check_node(v);
    return out_ptr_[v + 1] - out_ptr_[v];
}

std::size_t TopicInducedNetwork::in_degree(NodeId v) const {
    check_node(v);
    return in_ptr_[v + 1] - in_ptr_[v];
}

std::span<const NodeId> TopicInducedNetwork::out_neighbors(NodeId v) const {
    check_node(v);
    return {out_dst_.data() + out_ptr_[v], out_ptr_[v + 1] - out_ptr_[v]};
}

std::span<const std::int64_t> TopicInducedNetwork::out_positions(NodeId v) const {
    check_node(v);
    return {out_pos_.data() + out_ptr_[v], out_ptr_[v + 1] - out_ptr_[v]};
}

std::span<const double> TopicInducedNetwork::out_clicks(NodeId v) const {
    check_node(v);
    return {out_clk_.data() + out_ptr_[v], out_ptr_[v + 1] - out_ptr_[v]};
}

std::span<const NodeId> TopicInducedNetwork::in_neighbors(NodeId v) const {
    check_node(v);
    return {in_src_.data() + in_ptr_[v], in_ptr_[v + 1] - in_ptr_[v]};
}

bool TopicInducedNetwork::has_edge(NodeId src, NodeId dst) const {
    auto row = out_neighbors(src);
    return std::binary_search(row.begin(), row.end(), dst);
}

void TopicInducedNetwork::check_node(NodeId v) const {
    if (v >= names_.size())
        throw DataError("unknown node id " + std::to_string(v));
}

BlockEdgeCounts block_edge_counts(const TopicInducedNetwork& g) {
    BlockEdgeCounts out;
    const std::size_t n = g.node_count();
    for (NodeId v = 0; v < n; ++v) {
        const NodeLabel from = g.label(v);
        for (NodeId w : g.out_neighbors(v)) out.at(from, g.label(w)) += 1;
    }
    return out;
}

}  // namespace wikinav
