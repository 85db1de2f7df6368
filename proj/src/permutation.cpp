#include "annlab/permutation.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>

namespace annlab {

Permutation Permutation::identity(std::uint32_t n) {
    Permutation p;
    p.forward.resize(n);
    std::iota(p.forward.begin(), p.forward.end(), VertexId{0});
    p.inverse = p.forward;
    return p;
}

Permutation Permutation::from_forward(std::vector<VertexId> forward) {
    const std::uint32_t n = static_cast<std::uint32_t>(forward.size());
    if (n < 1) throw std::invalid_argument("Permutation: empty forward array");
    Permutation p;
    p.inverse.assign(n, kInvalidId);
    for (VertexId i = 0; i < n; ++i) {
        const VertexId target = forward[i];
        if (target >= n) {
            throw std::invalid_argument("Permutation: entry " + std::to_string(target) +
                                        " out of range");
        }
        if (p.inverse[target] != kInvalidId) {
            throw std::invalid_argument("Permutation: duplicate target " + std::to_string(target));
        }
        p.inverse[target] = i;
    }
    p.forward = std::move(forward);
    return p;
}

FixedDegreeGraph apply_permutation(const FixedDegreeGraph& g, const Permutation& p) {
    if (p.n() != g.n) {
        throw std::invalid_argument("apply_permutation: permutation length != graph size");
    }
    FixedDegreeGraph out;
    out.n = g.n;
    out.k_max = g.k_max;
    out.neighbors.assign(static_cast<std::size_t>(g.n) * g.k_max, kInvalidId);
    out.degrees.assign(g.n, 0);
    std::vector<VertexId> relabeled;
    relabeled.reserve(g.k_max);
    for (VertexId v = 0; v < g.n; ++v) {
        relabeled.clear();
        for (VertexId u : g.row_span(v)) relabeled.push_back(p.forward[u]);
        std::sort(relabeled.begin(), relabeled.end());
        const VertexId dst = p.forward[v];
        out.degrees[dst] = static_cast<std::uint32_t>(relabeled.size());
        std::copy(relabeled.begin(), relabeled.end(),
                  out.neighbors.begin() + static_cast<std::size_t>(dst) * g.k_max);
    }
    return out;
}

VectorDataset apply_permutation(const VectorDataset& ds, const Permutation& p) {
    if (p.n() != ds.n) {
        throw std::invalid_argument("apply_permutation: permutation length != dataset size");
    }
    VectorDataset out;
    out.n = ds.n;
    out.d = ds.d;
    out.metric = ds.metric;
    out.data.resize(ds.data.size());
    for (VertexId v = 0; v < ds.n; ++v) {
        std::memcpy(out.data.data() + static_cast<std::size_t>(p.forward[v]) * ds.d, ds.row(v),
                    sizeof(float) * ds.d);
    }
    return out;
}

std::pair<FixedDegreeGraph, VectorDataset> apply_permutation(const FixedDegreeGraph& g,
                                                             const VectorDataset& ds,
                                                             const Permutation& p) {
    if (g.n != ds.n) {
        throw std::invalid_argument("apply_permutation: graph and dataset sizes differ");
    }
    return {apply_permutation(g, p), apply_permutation(ds, p)};
}

}  // namespace annlab
