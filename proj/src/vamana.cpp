#include <algorithm>
#include <utility>
#include <vector>

#include "annlab/build.hpp"
#include "annlab/distance.hpp"
#include "annlab/rng.hpp"

namespace annlab {

namespace {

using Candidate = std::pair<float, VertexId>;  // (distance to owner, id)

// Occlusion prune, closest-first: a candidate x is dropped once a selected
// neighbor p* satisfies d(owner, x) > alpha * d(p*, x). Candidates carry
// their distance to the owner and must be sorted ascending by
// (distance, id); at most `degree_bound` survive.
void robust_prune(const VectorDataset& ds, std::vector<Candidate>& candidates, float alpha,
                  std::uint32_t degree_bound) {
    std::vector<Candidate> result;
    result.reserve(degree_bound);
    std::vector<std::uint8_t> pruned(candidates.size(), 0);
    for (std::size_t i = 0; i < candidates.size() && result.size() < degree_bound; ++i) {
        if (pruned[i]) continue;
        result.push_back(candidates[i]);
        const float* selected = ds.row(candidates[i].second);
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (pruned[j]) continue;
            const float detour =
                compute_distance(selected, ds.row(candidates[j].second), ds.d, ds.metric);
            if (candidates[j].first > alpha * detour) pruned[j] = 1;
        }
    }
    candidates.swap(result);
}

void sort_dedup(std::vector<Candidate>& candidates) {
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](const Candidate& a, const Candidate& b) {
                                     return a.second == b.second;
                                 }),
                     candidates.end());
}

// Greedy beam search over the partially built adjacency; returns the
// expanded vertices with their distances to the target (candidate pool
// for pruning).
std::vector<Candidate> collect_candidates(const VectorDataset& ds,
                                          const std::vector<std::vector<Candidate>>& rows,
                                          VertexId entry, const float* target,
                                          std::uint32_t beam_width) {
    struct PoolEntry {
        float dist;
        VertexId id;
        bool expanded;
    };
    std::vector<PoolEntry> pool;
    pool.reserve(beam_width + 1);
    std::vector<std::uint8_t> visited(ds.n, 0);
    std::vector<Candidate> expanded;

    auto insert = [&](float dist, VertexId id) {
        auto pos = std::lower_bound(pool.begin(), pool.end(), std::make_pair(dist, id),
                                    [](const PoolEntry& a, const Candidate& b) {
                                        return a.dist != b.first ? a.dist < b.first
                                                                 : a.id < b.second;
                                    });
        pool.insert(pos, {dist, id, false});
        if (pool.size() > beam_width) pool.pop_back();
    };

    visited[entry] = 1;
    insert(compute_distance(ds.row(entry), target, ds.d, ds.metric), entry);
    for (;;) {
        auto next = std::find_if(pool.begin(), pool.end(),
                                 [](const PoolEntry& e) { return !e.expanded; });
        if (next == pool.end()) break;
        next->expanded = true;
        expanded.emplace_back(next->dist, next->id);
        for (const Candidate& nb : rows[next->id]) {
            if (visited[nb.second]) continue;
            visited[nb.second] = 1;
            insert(compute_distance(ds.row(nb.second), target, ds.d, ds.metric), nb.second);
        }
    }
    return expanded;
}

}  // namespace

FixedDegreeGraph build_vamana(const VectorDataset& ds, const BuildParams& params) {
    params.validate(ds.n);
    const std::uint32_t n = ds.n;
    const std::uint32_t degree_bound = params.k_max;
    const VertexId medoid = find_medoid(ds, params.seed);

    // Seeded random initial graph keeps early searches connected.
    std::vector<std::vector<Candidate>> rows(n);
    for (VertexId v = 0; v < n; ++v) {
        SplitMix64 rng(hash_mix(params.seed, 0x76616d616eULL, v));
        auto& row = rows[v];
        while (row.size() < degree_bound) {
            const VertexId u = static_cast<VertexId>(rng.bounded(n));
            if (u == v) continue;
            const float dist = compute_distance(ds.row(v), ds.row(u), ds.d, ds.metric);
            if (std::find_if(row.begin(), row.end(),
                             [&](const Candidate& c) { return c.second == u; }) != row.end()) {
                continue;
            }
            row.emplace_back(dist, u);
        }
        std::sort(row.begin(), row.end());
    }

    // Two insertion passes; the first with alpha = 1 lays out short edges,
    // the second with the configured alpha re-prunes with detour slack.
    // Serial vertex order keeps the build deterministic.
    const float pass_alphas[2] = {1.0f, params.alpha};
    std::vector<Candidate> candidates;
    for (const float pass_alpha : pass_alphas) {
        for (VertexId v = 0; v < n; ++v) {
            candidates = collect_candidates(ds, rows, medoid, ds.row(v), params.build_beam_width);
            candidates.insert(candidates.end(), rows[v].begin(), rows[v].end());
            std::erase_if(candidates, [&](const Candidate& c) { return c.second == v; });
            sort_dedup(candidates);
            robust_prune(ds, candidates, pass_alpha, degree_bound);
            rows[v] = candidates;

            // Reverse edges, re-pruning any row that overflows.
            for (const Candidate& nb : rows[v]) {
                auto& target_row = rows[nb.second];
                if (std::find_if(target_row.begin(), target_row.end(), [&](const Candidate& c) {
                        return c.second == v;
                    }) != target_row.end()) {
                    continue;
                }
                const Candidate back_edge{nb.first, v};
                target_row.insert(
                    std::upper_bound(target_row.begin(), target_row.end(), back_edge), back_edge);
                if (target_row.size() > degree_bound) {
                    robust_prune(ds, target_row, pass_alpha, degree_bound);
                }
            }
        }
    }

    FixedDegreeGraph g;
    g.n = n;
    g.k_max = degree_bound;
    g.neighbors.assign(static_cast<std::size_t>(n) * degree_bound, kInvalidId);
    g.degrees.assign(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        g.degrees[v] = static_cast<std::uint32_t>(rows[v].size());
        VertexId* out = g.neighbors.data() + static_cast<std::size_t>(v) * degree_bound;
        for (std::size_t i = 0; i < rows[v].size(); ++i) out[i] = rows[v][i].second;
    }
    return g;
}

}  // namespace annlab
