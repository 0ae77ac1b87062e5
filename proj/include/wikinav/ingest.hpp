#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikinav/clicks.hpp"
#include "wikinav/graph.hpp"

namespace wikinav {

struct RawEdge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    std::int64_t position = kNoPosition;
};

// Name-interned edge list as parsed from disk: self-loops dropped, duplicate
// (src,dst) pairs collapsed keeping the minimum position rank.
class RawGraph {
public:
    std::uint32_t intern(std::string_view name);
    std::optional<std::uint32_t> find(std::string_view name) const;
    const std::string& name(std::uint32_t id) const { return names_[id]; }
    std::size_t node_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<RawEdge>& edges() const { return edges_; }
    std::vector<RawEdge>& edges() { return edges_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<RawEdge> edges_;
};

// `src \t dst [\t position_rank]`, UTF-8, '#' comment lines skipped.
// Edges missing a rank get end-of-page ranks in file order of appearance.
RawGraph parse_edge_list(std::istream& in);

enum class Side : std::uint8_t { P = 0, PBar = 1 };

struct PartitionSpec {
    std::string topic;
    std::string label_p;
    std::string label_pbar;
    std::unordered_map<std::string, Side> assignment;  // overlap names excluded
    std::unordered_set<std::string> overlap;           // claimed by both sides

    std::size_t count(Side s) const;
};

// `name \t {P|PBAR}` lines; a name listed under both sides is moved to the
// overlap set.
PartitionSpec parse_partition_file(std::istream& in);

// Public clickstream layout `prev \t curr \t type \t n`; only "link" rows
// are retained, duplicate pairs within one file accumulate.
ClickCounts parse_clickstream(std::istream& in);

// Arithmetic mean per pair over the files that contain it (monthly dumps
// censor pairs below their inclusion threshold, so absence is not zero).
ClickCounts average_clickstreams(std::span<const ClickCounts> months);

// `parent \t {subcat|member} \t child` lines.
class CategoryGraph {
public:
    void add_subcategory(const std::string& parent, const std::string& child);
    void add_member(const std::string& category, const std::string& article);
    bool has_category(const std::string& name) const;
    std::span<const std::string> subcategories(const std::string& name) const;
    std::span<const std::string> members(const std::string& name) const;

private:
    std::unordered_map<std::string, std::vector<std::string>> subcats_;
    std::unordered_map<std::string, std::vector<std::string>> members_;
    std::unordered_set<std::string> categories_;
};

CategoryGraph parse_category_file(std::istream& in);

// Collects members of each seed's category closure. The seed is always
// admitted; a subcategory is traversed only if its name contains at least one
// keyword (ASCII case-insensitive substring). A visited set makes traversal
// safe on cyclic category graphs. Articles reached from both seeds land in
// the overlap set.
PartitionSpec mine_partitions(const CategoryGraph& cats, const std::string& seed_p,
                              const std::string& seed_pbar,
                              std::span<const std::string> keywords_p,
                              std::span<const std::string> keywords_pbar);

// Builds the topic-induced network: partition names are labeled P/PBAR
// (overlap becomes NEIGHBOR), the one-hop in/out neighborhood of the topic
// becomes NEIGHBOR, and everything else is contracted into the single SUPER
// node with parallel edges compressed to one. Compressed edges keep the
// minimum position rank and the sum of click counts of their constituents.
// NEIGHBOR nodes left without out-edges get one synthetic edge to SUPER.
// Spec names absent from the edge list are skipped and reported via
// `warnings`.
TopicInducedNetwork build_topic_network(const RawGraph& raw, const PartitionSpec& spec,
                                        const ClickCounts* clicks = nullptr,
                                        std::vector<std::string>* warnings = nullptr);

// Reserved name for the contracted super node.
inline constexpr const char* kSuperNodeName = "<rest-of-network>";

}  // namespace wikinav
