#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "annlab/dataset.hpp"
#include "annlab/graph.hpp"
#include "annlab/types.hpp"

namespace annlab {

enum class EntryMode { kFixedSet, kSeededRandom };

struct SearchParams {
    std::uint32_t L = 64;  // candidate pool capacity
    std::uint32_t k = 10;  // results returned

    EntryMode entry_mode = EntryMode::kSeededRandom;
    std::vector<VertexId> entry_points;  // fixed-set mode
    std::uint32_t entry_count = 1;       // seeded-random mode
    std::uint64_t seed = 7;

    // Safety valve against pathological graphs; 0 means the default 10*L.
    std::uint32_t max_iterations = 0;

    std::uint32_t effective_max_iterations() const {
        return max_iterations != 0 ? max_iterations : 10 * L;
    }

    void validate(std::uint32_t n) const;
};

struct SearchStats {
    std::uint64_t distance_evals = 0;
    std::uint32_t hops = 0;     // expansion iterations
    std::uint32_t visited = 0;  // distinct vertices whose distance was computed
};

struct SearchResult {
    std::vector<VertexId> ids;     // ascending by (distance, ID)
    std::vector<float> distances;
    SearchStats stats;
};

// Entry vertices a search starts from, resolved from the params: either the
// fixed set (deduplicated) or `entry_count` seeded-random vertices.
std::vector<VertexId> resolve_entry_points(const SearchParams& params, std::uint32_t n);

// Greedy best-first beam search: keep the L best (distance, ID) candidates,
// repeatedly expand the nearest unexpanded one, probe its neighbor slots,
// skip already-visited vertices. Every selection and truncation is governed
// by the (distance, ID) total order, so results are fully deterministic.
SearchResult beam_search(const FixedDegreeGraph& g, const VectorDataset& ds, const float* query,
                         const SearchParams& params);

// Per-query results identical to individual beam_search calls; queries are
// distributed across OpenMP workers with the index shared read-only.
std::vector<SearchResult> batch_search(const FixedDegreeGraph& g, const VectorDataset& ds,
                                       const VectorDataset& queries, const SearchParams& params);

// Serial reference for the parallel kernel above; must match bit-exactly.
std::vector<SearchResult> batch_search_serial(const FixedDegreeGraph& g, const VectorDataset& ds,
                                              const VectorDataset& queries,
                                              const SearchParams& params);

}  // namespace annlab
