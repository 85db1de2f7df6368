#pragma once

#include <cstdint>

#include "annlab/dataset.hpp"

namespace annlab {

enum class SyntheticDist { kUniform, kGaussian };

struct SyntheticParams {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t seed = 42;
    std::uint64_t query_seed = 43;
    std::uint32_t n_queries = 0;
    Metric metric = Metric::kL2;
    SyntheticDist dist = SyntheticDist::kUniform;
    bool normalize = false;
    // Query distributions should differ from the database (separate seed);
    // set this to deliberately reuse the same seed.
    bool allow_equal_seeds = false;
};

struct SyntheticData {
    VectorDataset base;
    VectorDataset queries;
};

// Seeded synthetic vectors: i.i.d. components, uniform in [0,1) by default,
// drawn from SplitMix64 so identical parameters give bit-identical output on
// every platform.
SyntheticData generate_synthetic(const SyntheticParams& params);

// Single dataset (no queries); same stream as the `base` half above.
VectorDataset generate_synthetic_dataset(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                                         Metric metric = Metric::kL2,
                                         SyntheticDist dist = SyntheticDist::kUniform,
                                         bool normalize = false);

}  // namespace annlab
