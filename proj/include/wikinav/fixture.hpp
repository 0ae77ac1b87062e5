#pragma once

#include <cstdint>
#include <string>

namespace wikinav {

// Planted two-block directed graph with optional one-hop neighborhood and
// exterior shell, emitted in the ingestion TSV formats. Deterministic for a
// given parameter set and seed.
struct FixtureParams {
    int p_nodes = 50;
    int pbar_nodes = 50;
    int neighbor_nodes = 0;
    int exterior_nodes = 0;           // exterior pages attach only to neighbors
    double mean_out_degree = 8.0;     // per topic node
    double neighbor_mean_degree = 3.0;
    double across_p = 0.2;            // fraction of P out-links that cross to PBAR
    double across_pbar = -1.0;        // < 0: same as across_p
    double click_coverage = 0.6;      // fraction of edges with a clickstream row
    std::uint64_t seed = 1;
    std::string topic = "synthetic";
};

struct FixtureFiles {
    std::string edges_tsv;        // src \t dst \t position
    std::string partitions_tsv;   // name \t {P|PBAR}
    std::string clickstream_tsv;  // prev \t curr \t link \t n
    std::string categories_tsv;   // parent \t {subcat|member} \t child
};

FixtureFiles generate_fixture(const FixtureParams& params);

}  // namespace wikinav
