#include "annlab/ground_truth.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "annlab/distance.hpp"

namespace annlab {

namespace {

void check_args(const VectorDataset& ds, const VectorDataset& queries, std::uint32_t k) {
    if (queries.d != ds.d) {
        throw std::invalid_argument("exact_ground_truth: query dimensionality mismatch");
    }
    if (k < 1 || k > ds.n) {
        throw std::invalid_argument("exact_ground_truth: k must be in [1, n]");
    }
}

// Exact top-k for one query. A bounded max-heap ordered by (distance, ID)
// keeps the k best candidates; the final sort gives ascending output.
void scan_query(const VectorDataset& ds, const float* q, std::uint32_t k, VertexId* out_ids,
                float* out_dists) {
    using Entry = std::pair<float, VertexId>;  // (distance, id)
    std::vector<Entry> heap;
    heap.reserve(k);
    auto worse = [](const Entry& a, const Entry& b) { return a < b; };  // max-heap on (dist, id)
    for (VertexId v = 0; v < ds.n; ++v) {
        const float dist = compute_distance(q, ds.row(v), ds.d, ds.metric);
        const Entry e{dist, v};
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
    for (std::uint32_t i = 0; i < k; ++i) {
        out_ids[i] = heap[i].second;
        out_dists[i] = heap[i].first;
    }
}

}  // namespace

GroundTruth exact_ground_truth(const VectorDataset& ds, const VectorDataset& queries,
                               std::uint32_t k) {
    check_args(ds, queries, k);
    GroundTruth gt;
    gt.n_queries = queries.n;
    gt.k = k;
    gt.ids.resize(static_cast<std::size_t>(queries.n) * k);
    gt.distances.resize(static_cast<std::size_t>(queries.n) * k);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t q = 0; q < static_cast<std::int64_t>(queries.n); ++q) {
        scan_query(ds, queries.row(static_cast<std::uint32_t>(q)), k,
                   gt.ids.data() + static_cast<std::size_t>(q) * k,
                   gt.distances.data() + static_cast<std::size_t>(q) * k);
    }
    return gt;
}

GroundTruth exact_ground_truth_serial(const VectorDataset& ds, const VectorDataset& queries,
                                      std::uint32_t k) {
    check_args(ds, queries, k);
    GroundTruth gt;
    gt.n_queries = queries.n;
    gt.k = k;
    gt.ids.resize(static_cast<std::size_t>(queries.n) * k);
    gt.distances.resize(static_cast<std::size_t>(queries.n) * k);
    for (std::uint32_t q = 0; q < queries.n; ++q) {
        scan_query(ds, queries.row(q), k, gt.ids.data() + static_cast<std::size_t>(q) * k,
                   gt.distances.data() + static_cast<std::size_t>(q) * k);
    }
    return gt;
}

}  // namespace annlab
