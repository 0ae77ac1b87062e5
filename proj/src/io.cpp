#include "wikinav/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "wikinav/errors.hpp"

namespace wikinav {

namespace {

constexpr std::string_view kHeader = "#wikinav-network v1";

std::string serialize_body(const TopicInducedNetwork& g) {
    std::string out;
    out.reserve(64 + g.node_count() * 24 + g.edge_count() * 24);
    char buf[128];

    const auto& meta = g.meta();
    out += "topic\t" + meta.topic + "\t" + meta.label_p + "\t" + meta.label_pbar + "\n";
    std::snprintf(buf, sizeof(buf), "nodes\t%zu\nsuper\t%u\n", g.node_count(), g.super_node());
    out += buf;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::snprintf(buf, sizeof(buf), "node\t%u\t%s\t", v, to_string(g.label(v)));
        out += buf;
        out += g.name(v);
        out += '\n';
    }
    std::snprintf(buf, sizeof(buf), "edges\t%zu\n", g.edge_count());
    out += buf;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto neighbors = g.out_neighbors(v);
        const auto positions = g.out_positions(v);
        const auto clicks = g.out_clicks(v);
        for (std::size_t k = 0; k < neighbors.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "edge\t%u\t%u\t", v, neighbors[k]);
            out += buf;
            if (positions[k] == kNoPosition) {
                out += '-';
            } else {
                std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(positions[k]));
                out += buf;
            }
            out += '\t';
            if (clicks[k] == kNoClicks) {
                out += '-';
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g", clicks[k]);
                out += buf;
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

std::uint64_t network_digest(const TopicInducedNetwork& g) {
    return fnv1a64(serialize_body(g));
}

std::string serialize_network(const TopicInducedNetwork& g) {
    const std::string body = serialize_body(g);
    std::string out(kHeader);
    out += "\ndigest\t";
    out += digest_hex(fnv1a64(body));
    out += '\n';
    out += body;
    return out;
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

template <typename T>
T parse_int(std::string_view s, std::size_t line_no) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("expected an integer, got '" + std::string(s) + "'", line_no);
    return value;
}

}  // namespace

TopicInducedNetwork deserialize_network(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t cursor = 0;
    auto next_line = [&](std::string_view& line) {
        if (cursor >= text.size()) return false;
        std::size_t end = text.find('\n', cursor);
        if (end == std::string_view::npos) end = text.size();
        line = text.substr(cursor, end - cursor);
        cursor = end + 1;
        ++line_no;
        return true;
    };

    std::string_view line;
    if (!next_line(line) || line != kHeader)
        throw DataError("not a network artifact (missing header)");

    if (!next_line(line)) throw DataError("truncated network artifact");
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0] != "digest")
        throw ParseError("expected digest line", line_no);
    const std::string stored_digest(fields[1]);
    const std::string_view body = text.substr(cursor);
    if (digest_hex(fnv1a64(body)) != stored_digest)
        throw DataError("network artifact digest mismatch; file is corrupt or was edited");

    NetworkBuilder builder;
    NetworkMeta meta;
    std::size_t declared_nodes = 0;
    std::size_t declared_edges = 0;
    std::size_t seen_nodes = 0;
    std::size_t seen_edges = 0;
    std::optional<NodeId> declared_super;

    while (next_line(line)) {
        fields = split_tabs(line);
        if (fields.empty() || fields[0].empty()) continue;
        const std::string_view tag = fields[0];
        if (tag == "topic") {
            if (fields.size() != 4) throw ParseError("malformed topic line", line_no);
            meta = NetworkMeta{std::string(fields[1]), std::string(fields[2]),
                               std::string(fields[3])};
        } else if (tag == "nodes") {
            if (fields.size() != 2) throw ParseError("malformed nodes line", line_no);
            declared_nodes = parse_int<std::size_t>(fields[1], line_no);
        } else if (tag == "super") {
            if (fields.size() != 2) throw ParseError("malformed super line", line_no);
            declared_super = parse_int<NodeId>(fields[1], line_no);
        } else if (tag == "node") {
            if (fields.size() != 4) throw ParseError("malformed node line", line_no);
            const NodeId id = parse_int<NodeId>(fields[1], line_no);
            if (id != seen_nodes)
                throw ParseError("node ids must be dense and in order", line_no);
            const auto label = label_from_string(fields[2]);
            if (!label) throw ParseError("unknown node label '" + std::string(fields[2]) + "'",
                                         line_no);
            builder.add_node(std::string(fields[3]), *label);
            ++seen_nodes;
        } else if (tag == "edges") {
            if (fields.size() != 2) throw ParseError("malformed edges line", line_no);
            declared_edges = parse_int<std::size_t>(fields[1], line_no);
        } else if (tag == "edge") {
            if (fields.size() != 5) throw ParseError("malformed edge line", line_no);
            const NodeId src = parse_int<NodeId>(fields[1], line_no);
            const NodeId dst = parse_int<NodeId>(fields[2], line_no);
            std::int64_t pos = kNoPosition;
            if (fields[3] != "-") pos = parse_int<std::int64_t>(fields[3], line_no);
            double clicks = kNoClicks;
            if (fields[4] != "-") {
                const std::string_view s = fields[4];
                const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), clicks);
                if (ec != std::errc{} || ptr != s.data() + s.size())
                    throw ParseError("malformed click count", line_no);
            }
            builder.add_edge(src, dst, pos, clicks);
            ++seen_edges;
        } else {
            throw ParseError("unknown record '" + std::string(tag) + "'", line_no);
        }
    }

    if (seen_nodes != declared_nodes)
        throw DataError("node count mismatch: declared " + std::to_string(declared_nodes) +
                        ", found " + std::to_string(seen_nodes));
    if (seen_edges != declared_edges)
        throw DataError("edge count mismatch: declared " + std::to_string(declared_edges) +
                        ", found " + std::to_string(seen_edges));
    builder.set_meta(std::move(meta));
    TopicInducedNetwork g = builder.build();
    if (declared_super && *declared_super != g.super_node())
        throw DataError("super-node id does not match the SUPER-labeled node");
    return g;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void save_network(const TopicInducedNetwork& g, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_network(g));
}

TopicInducedNetwork load_network(const std::filesystem::path& path) {
    return deserialize_network(read_file(path));
}

}  // namespace wikinav
