#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "annlab/types.hpp"

namespace annlab {

// The unified index representation: n rows of k_max neighbor slots.
// Row v holds deg(v) valid neighbor IDs followed by kInvalidId padding.
// Immutable after construction.
struct FixedDegreeGraph {
    std::uint32_t n = 0;
    std::uint32_t k_max = 0;
    std::vector<VertexId> neighbors;      // n * k_max slots
    std::vector<std::uint32_t> degrees;   // valid slots per row

    std::uint32_t degree(VertexId v) const { return degrees[v]; }

    const VertexId* row(VertexId v) const {
        return neighbors.data() + static_cast<std::size_t>(v) * k_max;
    }

    // Valid slots only.
    std::span<const VertexId> row_span(VertexId v) const { return {row(v), degrees[v]}; }

    std::uint64_t edge_count() const;

    static FixedDegreeGraph create(std::uint32_t n, std::uint32_t k_max,
                                   std::vector<VertexId> neighbors,
                                   std::vector<std::uint32_t> degrees);

    // Checks ID ranges, sentinel discipline, self-loops and in-row duplicates.
    void validate() const;

    std::vector<std::uint32_t> in_degrees() const;
    std::vector<std::uint32_t> out_degrees() const { return degrees; }
};

// Builds a graph from variable-length adjacency lists, padding rows to k_max.
FixedDegreeGraph graph_from_lists(const std::vector<std::vector<VertexId>>& lists,
                                  std::uint32_t k_max);

}  // namespace annlab
