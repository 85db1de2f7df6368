#include "annlab/synthetic.hpp"

#include <cmath>
#include <stdexcept>

#include "annlab/rng.hpp"

namespace annlab {

namespace {

// Box-Muller on two uniform doubles; fixed formula rather than
// std::normal_distribution, whose output is implementation-defined.
float next_gaussian(SplitMix64& rng) {
    double u1 = rng.next_double();
    while (u1 <= 0.0) u1 = rng.next_double();
    const double u2 = rng.next_double();
    return static_cast<float>(std::sqrt(-2.0 * std::log(u1)) *
                              std::cos(2.0 * 3.14159265358979323846 * u2));
}

void normalize_rows(std::vector<float>& data, std::uint32_t n, std::uint32_t d) {
    for (std::uint32_t i = 0; i < n; ++i) {
        float* row = data.data() + static_cast<std::size_t>(i) * d;
        double norm_sq = 0.0;
        for (std::uint32_t j = 0; j < d; ++j) norm_sq += double(row[j]) * row[j];
        const float inv = norm_sq > 0.0 ? static_cast<float>(1.0 / std::sqrt(norm_sq)) : 0.0f;
        for (std::uint32_t j = 0; j < d; ++j) row[j] *= inv;
    }
}

}  // namespace

VectorDataset generate_synthetic_dataset(std::uint32_t n, std::uint32_t d, std::uint64_t seed,
                                         Metric metric, SyntheticDist dist, bool normalize) {
    if (n < 1 || d < 1) throw std::invalid_argument("generate_synthetic: n and d must be >= 1");
    SplitMix64 rng(seed);
    std::vector<float> data;
    data.reserve(static_cast<std::size_t>(n) * d);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n) * d; ++i) {
        data.push_back(dist == SyntheticDist::kUniform ? rng.next_float() : next_gaussian(rng));
    }
    if (normalize) normalize_rows(data, n, d);
    return VectorDataset::create(n, d, metric, std::move(data));
}

SyntheticData generate_synthetic(const SyntheticParams& p) {
    if (p.n_queries < 1) throw std::invalid_argument("generate_synthetic: n_queries must be >= 1");
    if (p.seed == p.query_seed && !p.allow_equal_seeds) {
        throw std::invalid_argument(
            "generate_synthetic: query seed equals data seed; pass allow_equal_seeds to override");
    }
    SyntheticData out;
    out.base = generate_synthetic_dataset(p.n, p.d, p.seed, p.metric, p.dist, p.normalize);
    out.queries =
        generate_synthetic_dataset(p.n_queries, p.d, p.query_seed, p.metric, p.dist, p.normalize);
    return out;
}

}  // namespace annlab
