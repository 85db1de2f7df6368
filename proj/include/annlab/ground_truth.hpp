#pragma once

#include <cstdint>
#include <vector>

#include "annlab/dataset.hpp"
#include "annlab/types.hpp"

namespace annlab {

// Exact top-k per query: IDs sorted by (distance, ID) ascending.
struct GroundTruth {
    std::uint32_t n_queries = 0;
    std::uint32_t k = 0;
    std::vector<VertexId> ids;     // n_queries * k
    std::vector<float> distances;  // n_queries * k

    const VertexId* row(std::uint32_t q) const {
        return ids.data() + static_cast<std::size_t>(q) * k;
    }
    const float* dist_row(std::uint32_t q) const {
        return distances.data() + static_cast<std::size_t>(q) * k;
    }
};

// Brute-force scan of the whole database per query; ties broken by
// ascending vertex ID. Parallel over queries; this is the oracle against
// which every recall number is computed.
GroundTruth exact_ground_truth(const VectorDataset& ds, const VectorDataset& queries,
                               std::uint32_t k);

// Serial reference for the OpenMP kernel above. Must produce identical output.
GroundTruth exact_ground_truth_serial(const VectorDataset& ds, const VectorDataset& queries,
                                      std::uint32_t k);

}  // namespace annlab
