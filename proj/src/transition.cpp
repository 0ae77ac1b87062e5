#include "wikinav/transition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wikinav/errors.hpp"

namespace wikinav {

const char* to_string(CwpKind kind) {
    switch (kind) {
        case CwpKind::Uniform: return "uniform";
        case CwpKind::Position: return "position";
        case CwpKind::Clicks: return "clicks";
    }
    return "?";
}

std::optional<CwpKind> cwp_from_string(std::string_view s) {
    if (s == "uniform") return CwpKind::Uniform;
    if (s == "position") return CwpKind::Position;
    if (s == "clicks") return CwpKind::Clicks;
    return std::nullopt;
}

TransitionMatrix::TransitionMatrix(std::size_t dim, Pattern row_ptr, Columns cols,
                                   std::vector<double> values)
    : dim_(dim), rows_(std::move(row_ptr)), cols_(std::move(cols)), values_(std::move(values)) {
    if (rows_->size() != dim_ + 1 || cols_->size() != values_.size() || rows_->back() != values_.size())
        throw DataError("inconsistent CSR shape");
}

std::span<const NodeId> TransitionMatrix::row_cols(NodeId i) const {
    const auto& r = *rows_;
    return {cols_->data() + r[i], r[i + 1] - r[i]};
}

std::span<const double> TransitionMatrix::row_values(NodeId i) const {
    const auto& r = *rows_;
    return {values_.data() + r[i], r[i + 1] - r[i]};
}

double TransitionMatrix::at(NodeId i, NodeId j) const {
    const auto cols = row_cols(i);
    const auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

TransitionMatrix TransitionMatrix::with_values(std::vector<double> values) const {
    return TransitionMatrix(dim_, rows_, cols_, std::move(values));
}

double TransitionMatrix::max_row_sum_error() const {
    const auto& r = *rows_;
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (r[i] == r[i + 1]) continue;
        double sum = 0.0;
        for (std::size_t k = r[i]; k < r[i + 1]; ++k) sum += values_[k];
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

namespace {

struct PatternPair {
    TransitionMatrix::Pattern rows;
    TransitionMatrix::Columns cols;
};

PatternPair copy_pattern(const TopicInducedNetwork& g) {
    auto row_ptr = g.out_row_ptr();
    auto dst = g.out_dst();
    return {std::make_shared<const std::vector<std::size_t>>(row_ptr.begin(), row_ptr.end()),
            std::make_shared<const std::vector<NodeId>>(dst.begin(), dst.end())};
}

}  // namespace

TransitionMatrix uniform_matrix(const TopicInducedNetwork& g) {
    auto [rows, cols] = copy_pattern(g);
    std::vector<double> values(cols->size());
    const auto& r = *rows;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const std::size_t deg = r[i + 1] - r[i];
        if (deg == 0) continue;
        const double p = 1.0 / static_cast<double>(deg);
        for (std::size_t k = r[i]; k < r[i + 1]; ++k) values[k] = p;
    }
    return TransitionMatrix(g.node_count(), rows, cols, std::move(values));
}

TransitionMatrix position_matrix(const TopicInducedNetwork& g) {
    auto [rows, cols] = copy_pattern(g);
    std::vector<double> values(cols->size());
    const auto& r = *rows;
    auto positions = g.out_positions_flat();
    const auto& dst = *cols;

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const std::size_t deg = r[i + 1] - r[i];
        if (deg == 0) continue;
        for (std::size_t k = r[i]; k < r[i + 1]; ++k) {
            if (positions[k] == kNoPosition)
                throw DataError("position model needs a rank on every out-link, missing on '" +
                                g.name(static_cast<NodeId>(i)) + "' -> '" + g.name(dst[k]) + "'");
        }
        order.resize(deg);
        for (std::size_t k = 0; k < deg; ++k) order[k] = r[i] + k;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return positions[a] != positions[b] ? positions[a] < positions[b] : dst[a] < dst[b];
        });
        double sum = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            const double score = std::tanh(static_cast<double>(deg - k));
            values[order[k]] = score;
            sum += score;
        }
        for (std::size_t k = r[i]; k < r[i + 1]; ++k) values[k] /= sum;
    }
    return TransitionMatrix(g.node_count(), rows, cols, std::move(values));
}

TransitionMatrix clicks_matrix(const TopicInducedNetwork& g, const ClickCounts* clicks,
                               double smoothing) {
    if (!(smoothing > 0.0)) throw ConfigError("clicks smoothing count must be positive");
    auto [rows, cols] = copy_pattern(g);
    std::vector<double> values(cols->size());
    const auto& r = *rows;
    const auto& dst = *cols;
    auto edge_clicks = g.out_clicks_flat();

    for (std::size_t i = 0; i < g.node_count(); ++i) {
        if (r[i] == r[i + 1]) continue;
        double sum = 0.0;
        for (std::size_t k = r[i]; k < r[i + 1]; ++k) {
            double c = edge_clicks[k];
            if (c == kNoClicks && clicks) {
                const auto looked =
                    clicks->get(g.name(static_cast<NodeId>(i)), g.name(dst[k]));
                if (looked) c = *looked;
            }
            if (c == kNoClicks) c = smoothing;
            if (c < 0.0)
                throw DataError("negative click count on '" + g.name(static_cast<NodeId>(i)) +
                                "' -> '" + g.name(dst[k]) + "'");
            values[k] = c;
            sum += c;
        }
        if (sum == 0.0)
            throw DataError("all click counts are zero on page '" +
                            g.name(static_cast<NodeId>(i)) + "'");
        for (std::size_t k = r[i]; k < r[i + 1]; ++k) values[k] /= sum;
    }
    return TransitionMatrix(g.node_count(), rows, cols, std::move(values));
}

TransitionMatrix build_matrix(const TopicInducedNetwork& g, const CwpSpec& spec,
                              const ClickCounts* clicks) {
    switch (spec.kind) {
        case CwpKind::Uniform: return uniform_matrix(g);
        case CwpKind::Position: return position_matrix(g);
        case CwpKind::Clicks: return clicks_matrix(g, clicks, spec.smoothing);
    }
    throw ConfigError("unknown click-within-page model");
}

void write_matrix_tsv(const TransitionMatrix& m, std::ostream& out) {
    out << "# row\tcol\tprob\n";
    char buf[64];
    const auto rows = m.row_ptr();
    const auto cols = m.cols();
    const auto values = m.values();
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        for (std::size_t k = rows[i]; k < rows[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%zu\t%u\t%.17g\n", i, cols[k], values[k]);
            out << buf;
        }
    }
}

}  // namespace wikinav
