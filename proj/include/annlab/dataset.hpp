#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "annlab/types.hpp"

namespace annlab {

// A database of n d-dimensional float vectors in row-major order plus the
// metric they are compared under. Immutable after construction.
struct VectorDataset {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    Metric metric = Metric::kL2;
    std::vector<float> data;  // n * d floats

    const float* row(VertexId i) const { return data.data() + static_cast<std::size_t>(i) * d; }

    std::span<const float> row_span(VertexId i) const { return {row(i), d}; }

    static VectorDataset create(std::uint32_t n, std::uint32_t d, Metric metric,
                                std::vector<float> data);

    // Enforces n >= 1, d >= 1, exact length, and finiteness of every component.
    void validate() const;
};

}  // namespace annlab
