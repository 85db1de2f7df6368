#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "annlab/dataset.hpp"
#include "annlab/graph.hpp"
#include "annlab/types.hpp"

namespace annlab {

// Bijection on vertex IDs. forward[i] is the new ID of vertex i,
// inverse[forward[i]] == i.
struct Permutation {
    std::vector<VertexId> forward;
    std::vector<VertexId> inverse;

    std::uint32_t n() const { return static_cast<std::uint32_t>(forward.size()); }

    VertexId operator()(VertexId i) const { return forward[i]; }

    static Permutation identity(std::uint32_t n);

    // Validates bijectivity and fills the inverse.
    static Permutation from_forward(std::vector<VertexId> forward);
};

// Relocates vertex i to row p(i) in both the graph and the dataset.
// Neighbor IDs are relabeled through p and each row's valid slots are
// left-packed in ascending relabeled-ID order, so the output layout is a
// deterministic function of (input, p).
FixedDegreeGraph apply_permutation(const FixedDegreeGraph& g, const Permutation& p);

std::pair<FixedDegreeGraph, VectorDataset> apply_permutation(const FixedDegreeGraph& g,
                                                             const VectorDataset& ds,
                                                             const Permutation& p);

VectorDataset apply_permutation(const VectorDataset& ds, const Permutation& p);

}  // namespace annlab
