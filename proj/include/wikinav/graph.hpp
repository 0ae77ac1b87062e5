#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wikinav {

// Dense node identifier, stable for the lifetime of one network instance.
using NodeId = std::uint32_t;

enum class NodeLabel : std::uint8_t { P = 0, PBar = 1, Neighbor = 2, Super = 3 };

const char* to_string(NodeLabel label);
std::optional<NodeLabel> label_from_string(std::string_view s);

// Sentinels for absent per-edge attributes.
inline constexpr std::int64_t kNoPosition = -1;
inline constexpr double kNoClicks = -1.0;

struct EdgeRecord {
    NodeId src = 0;
    NodeId dst = 0;
    std::int64_t position = kNoPosition;  // 0 = topmost link on the page
    double clicks = kNoClicks;            // average observed click count
};

// Edge tally per ordered (source label, destination label) block pair.
struct BlockEdgeCounts {
    std::array<std::array<std::int64_t, 4>, 4> counts{};

    std::int64_t count(NodeLabel from, NodeLabel to) const {
        return counts[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
    }
    std::int64_t& at(NodeLabel from, NodeLabel to) {
        return counts[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
    }
    std::int64_t total() const;
};

// Descriptive metadata carried along for reports; no structural meaning.
struct NetworkMeta {
    std::string topic;
    std::string label_p;
    std::string label_pbar;
};

class TopicInducedNetwork;

class NetworkBuilder {
public:
    NodeId add_node(std::string name, NodeLabel label);
    void add_edge(NodeId src, NodeId dst, std::int64_t position = kNoPosition,
                  double clicks = kNoClicks);
    void set_meta(NetworkMeta meta) { meta_ = std::move(meta); }

    // check_super_adjacency=false exists for degree-preserving rewiring,
    // which may legally move endpoints of super-node edges outside the
    // one-hop neighborhood. All other construction paths keep it on.
    TopicInducedNetwork build(bool check_super_adjacency = true);

private:
    std::vector<std::string> names_;
    std::vector<NodeLabel> labels_;
    std::vector<EdgeRecord> edges_;
    NetworkMeta meta_;
};

// Immutable labeled directed graph over P, PBAR, NEIGHBOR nodes and a single
// SUPER node. Adjacency is CSR in both directions; out-edges of each node are
// sorted by destination id. Safe for any number of concurrent readers.
class TopicInducedNetwork {
public:
    std::size_t node_count() const { return names_.size(); }
    std::size_t edge_count() const { return out_dst_.size(); }
    NodeId super_node() const { return super_; }

    NodeLabel label(NodeId v) const;
    const std::string& name(NodeId v) const;
    std::optional<NodeId> find(std::string_view name) const;
    std::vector<NodeId> nodes_in(NodeLabel label) const;
    std::size_t count_nodes(NodeLabel label) const;

    std::size_t out_degree(NodeId v) const;
    std::size_t in_degree(NodeId v) const;

    std::span<const NodeId> out_neighbors(NodeId v) const;
    std::span<const std::int64_t> out_positions(NodeId v) const;
    std::span<const double> out_clicks(NodeId v) const;
    std::span<const NodeId> in_neighbors(NodeId v) const;

    // Flat CSR views for edge-indexed passes.
    std::span<const std::size_t> out_row_ptr() const { return out_ptr_; }
    std::span<const NodeId> out_dst() const { return out_dst_; }
    std::span<const std::int64_t> out_positions_flat() const { return out_pos_; }
    std::span<const double> out_clicks_flat() const { return out_clk_; }

    bool has_edge(NodeId src, NodeId dst) const;

    const NetworkMeta& meta() const { return meta_; }

private:
    friend class NetworkBuilder;
    TopicInducedNetwork() = default;

    void check_node(NodeId v) const;

    std::vector<std::string> names_;
    std::vector<NodeLabel> labels_;
    std::vector<std::size_t> out_ptr_;
    std::vector<NodeId> out_dst_;
    std::vector<std::int64_t> out_pos_;
    std::vector<double> out_clk_;
    std::vector<std::size_t> in_ptr_;
    std::vector<NodeId> in_src_;
    NodeId super_ = 0;
    std::unordered_map<std::string, NodeId> index_;
    NetworkMeta meta_;
};

BlockEdgeCounts block_edge_counts(const TopicInducedNetwork& g);

}  // namespace wikinav
