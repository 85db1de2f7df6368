#include "annlab/build.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "annlab/distance.hpp"
#include "annlab/rng.hpp"

namespace annlab {

void BuildParams::validate(std::uint32_t n) const {
    if (k_max < 2) throw std::invalid_argument("BuildParams: k_max must be >= 2");
    if (k_max > n - 1) throw std::invalid_argument("BuildParams: k_max must be <= n-1");
    if (!(sample_rate > 0.0f) || sample_rate > 1.0f) {
        throw std::invalid_argument("BuildParams: sample_rate must be in (0, 1]");
    }
    if (alpha < 1.0f) throw std::invalid_argument("BuildParams: alpha must be >= 1");
    if (build_beam_width < 1) {
        throw std::invalid_argument("BuildParams: build_beam_width must be >= 1");
    }
}

FixedDegreeGraph build_exact_knn(const VectorDataset& ds, std::uint32_t k) {
    if (k < 1 || k >= ds.n) {
        throw std::invalid_argument("build_exact_knn: k must be in [1, n-1]");
    }
    FixedDegreeGraph g;
    g.n = ds.n;
    g.k_max = k;
    g.neighbors.assign(static_cast<std::size_t>(ds.n) * k, kInvalidId);
    g.degrees.assign(ds.n, k);

#pragma omp parallel
    {
        using Entry = std::pair<float, VertexId>;
        std::vector<Entry> heap;
        heap.reserve(k);
        auto worse = [](const Entry& a, const Entry& b) { return a < b; };
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(ds.n); ++vi) {
            const VertexId v = static_cast<VertexId>(vi);
            heap.clear();
            const float* vec = ds.row(v);
            for (VertexId u = 0; u < ds.n; ++u) {
                if (u == v) continue;
                const Entry e{compute_distance(vec, ds.row(u), ds.d, ds.metric), u};
                if (heap.size() < k) {
                    heap.push_back(e);
                    std::push_heap(heap.begin(), heap.end(), worse);
                } else if (e < heap.front()) {
                    std::pop_heap(heap.begin(), heap.end(), worse);
                    heap.back() = e;
                    std::push_heap(heap.begin(), heap.end(), worse);
                }
            }
            std::sort(heap.begin(), heap.end());
            VertexId* row = g.neighbors.data() + static_cast<std::size_t>(v) * k;
            for (std::uint32_t i = 0; i < k; ++i) row[i] = heap[i].second;
        }
    }
    return g;
}

VertexId find_medoid(const VectorDataset& ds, std::uint64_t seed) {
    // Sample of anchor vectors the summed distance is computed against.
    std::vector<VertexId> sample;
    if (ds.n <= 1000) {
        sample.resize(ds.n);
        for (VertexId v = 0; v < ds.n; ++v) sample[v] = v;
    } else {
        SplitMix64 rng(hash_mix(seed, 0x6d65646f6964ULL));  // independent sub-stream
        sample.reserve(1000);
        for (int i = 0; i < 1000; ++i) sample.push_back(static_cast<VertexId>(rng.bounded(ds.n)));
    }

    std::vector<double> sums(ds.n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(ds.n); ++vi) {
        const VertexId v = static_cast<VertexId>(vi);
        double acc = 0.0;
        for (VertexId a : sample) acc += compute_distance(ds.row(v), ds.row(a), ds.d, ds.metric);
        sums[v] = acc;
    }
    VertexId best = 0;
    for (VertexId v = 1; v < ds.n; ++v) {
        if (sums[v] < sums[best]) best = v;
    }
    return best;
}

}  // namespace annlab
