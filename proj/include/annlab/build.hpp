#pragma once

#include <cstdint>
#include <vector>

#include "annlab/dataset.hpp"
#include "annlab/graph.hpp"

namespace annlab {

struct BuildParams {
    std::uint32_t k_max = 32;

    // NN-Descent knobs.
    float sample_rate = 1.0f;         // fraction of new neighbors joined per round
    std::uint32_t max_iters = 10;
    double convergence_delta = 0.001; // stop when updated fraction drops below

    // Vamana knobs.
    float alpha = 1.2f;
    std::uint32_t build_beam_width = 64;

    std::uint64_t seed = 42;

    void validate(std::uint32_t n) const;
};

// Exact k-nearest-neighbor graph (self excluded), ties by ascending ID.
// Oracle base graph; O(n^2) scan parallelized over rows.
FixedDegreeGraph build_exact_knn(const VectorDataset& ds, std::uint32_t k);

struct NnDescentStats {
    std::uint32_t iterations = 0;
    std::vector<double> update_fractions;  // per executed iteration
};

// NN-Descent: seeded random k-NN graph refined by local joins over sampled
// neighbors-of-neighbors (including reverse neighbors). Deterministic for a
// fixed seed regardless of thread count: every pool merge takes the best
// k_max of a well-defined candidate set under the (distance, ID) order, so
// the result does not depend on insertion order.
FixedDegreeGraph build_nn_descent(const VectorDataset& ds, const BuildParams& params,
                                  NnDescentStats* stats = nullptr);

// Vamana-style pruned graph: random initial graph, then two insertion passes
// (alpha = 1, then params.alpha) of greedy-search-from-medoid candidate
// collection, occlusion pruning, and reverse-edge insertion with re-pruning.
// Entry point for searches is the medoid. Serial insertion order keeps the
// build bit-deterministic.
FixedDegreeGraph build_vamana(const VectorDataset& ds, const BuildParams& params);

// Vector minimizing the summed distance to a seeded sample of 1000 vectors
// (all vectors when n <= 1000).
VertexId find_medoid(const VectorDataset& ds, std::uint64_t seed);

}  // namespace annlab
