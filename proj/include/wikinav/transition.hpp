#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "wikinav/clicks.hpp"
#include "wikinav/graph.hpp"

namespace wikinav {

enum class CwpKind : std::uint8_t { Uniform = 0, Position = 1, Clicks = 2 };

const char* to_string(CwpKind kind);
std::optional<CwpKind> cwp_from_string(std::string_view s);

struct CwpSpec {
    CwpKind kind = CwpKind::Uniform;
    double smoothing = 10.0;  // clicks model only; must be > 0
};

// Sparse row-stochastic matrix in CSR form. The sparsity pattern always
// equals the adjacency of the network it was built from; deflation steps
// share the pattern and replace only the values.
class TransitionMatrix {
public:
    using Pattern = std::shared_ptr<const std::vector<std::size_t>>;
    using Columns = std::shared_ptr<const std::vector<NodeId>>;

    TransitionMatrix(std::size_t dim, Pattern row_ptr, Columns cols, std::vector<double> values);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const std::size_t> row_ptr() const { return *rows_; }
    std::span<const NodeId> cols() const { return *cols_; }
    std::span<const double> values() const { return values_; }
    std::span<double> values_mut() { return values_; }

    std::span<const NodeId> row_cols(NodeId i) const;
    std::span<const double> row_values(NodeId i) const;
    double at(NodeId i, NodeId j) const;  // 0 when (i,j) is not an edge

    // Pattern-sharing copy with fresh values.
    TransitionMatrix with_values(std::vector<double> values) const;

    // max over non-empty rows of |row sum - 1|
    double max_row_sum_error() const;

    const Pattern& row_ptr_handle() const { return rows_; }
    const Columns& cols_handle() const { return cols_; }

private:
    std::size_t dim_;
    Pattern rows_;
    Columns cols_;
    std::vector<double> values_;
};

// Readers click every link of a page uniformly at random.
TransitionMatrix uniform_matrix(const TopicInducedNetwork& g);

// Readers favor links near the top of the page: out-links are ordered by
// their stored position rank (ties broken by destination id) and link j with
// 0-based rank k on a page with d links gets weight tanh(d - k), normalized
// per row. Ranks are re-densified per page, so the bottom link always keeps
// a strictly positive weight. Every out-edge must carry a position rank.
TransitionMatrix position_matrix(const TopicInducedNetwork& g);

// Observed click behavior: per-edge counts are taken from the edge attribute
// when present (compressed super-node edges carry aggregated counts), then
// from `clicks` by name pair, and otherwise fall back to the smoothing count,
// matching the clickstream inclusion threshold. Smoothing never creates
// entries outside the adjacency.
TransitionMatrix clicks_matrix(const TopicInducedNetwork& g, const ClickCounts* clicks = nullptr,
                               double smoothing = 10.0);

TransitionMatrix build_matrix(const TopicInducedNetwork& g, const CwpSpec& spec,
                              const ClickCounts* clicks = nullptr);

// `row \t col \t prob` with 17-significant-digit probabilities.
void write_matrix_tsv(const TransitionMatrix& m, std::ostream& out);

}  // namespace wikinav
