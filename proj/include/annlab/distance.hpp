#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "annlab/types.hpp"

namespace annlab {

// Distance kernels. Both metrics are oriented so that smaller is better:
// L2 is the squared Euclidean distance, inner product is negated.
// Accumulation is sequential over components, which fixes the summation
// order and makes results bit-reproducible.

inline float l2_sq(const float* a, const float* b, std::uint32_t d) {
    float acc = 0.0f;
    for (std::uint32_t j = 0; j < d; ++j) {
        const float diff = a[j] - b[j];
        acc += diff * diff;
    }
    return acc;
}

inline float neg_inner_product(const float* a, const float* b, std::uint32_t d) {
    float acc = 0.0f;
    for (std::uint32_t j = 0; j < d; ++j) {
        acc += a[j] * b[j];
    }
    return -acc;
}

inline float compute_distance(const float* a, const float* b, std::uint32_t d, Metric m) {
    return m == Metric::kL2 ? l2_sq(a, b, d) : neg_inner_product(a, b, d);
}

// Checked entry point for callers outside the hot loops.
inline float distance(std::span<const float> a, std::span<const float> b, Metric m) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distance: dimension mismatch");
    }
    return compute_distance(a.data(), b.data(), static_cast<std::uint32_t>(a.size()), m);
}

}  // namespace annlab
