#include "annlab/search.hpp"

#include <algorithm>
#include <stdexcept>

#include "annlab/distance.hpp"
#include "annlab/rng.hpp"

namespace annlab {

void SearchParams::validate(std::uint32_t n) const {
    if (L < 1) throw std::invalid_argument("SearchParams: L must be >= 1");
    if (k < 1 || k > L) throw std::invalid_argument("SearchParams: k must be in [1, L]");
    if (k > n) throw std::invalid_argument("SearchParams: k exceeds vertex count");
    if (entry_mode == EntryMode::kFixedSet) {
        if (entry_points.empty()) {
            throw std::invalid_argument("SearchParams: fixed-set mode needs entry points");
        }
        for (VertexId e : entry_points) {
            if (e >= n) throw std::invalid_argument("SearchParams: entry point out of range");
        }
    } else if (entry_count < 1) {
        throw std::invalid_argument("SearchParams: entry_count must be >= 1");
    }
}

std::vector<VertexId> resolve_entry_points(const SearchParams& params, std::uint32_t n) {
    std::vector<VertexId> entries;
    if (params.entry_mode == EntryMode::kFixedSet) {
        entries = params.entry_points;
    } else {
        SplitMix64 rng(hash_mix(params.seed, 0x656e747279ULL));
        const std::uint32_t want = std::min(params.entry_count, n);
        while (entries.size() < want) {
            const VertexId v = static_cast<VertexId>(rng.bounded(n));
            if (std::find(entries.begin(), entries.end(), v) == entries.end()) {
                entries.push_back(v);
            }
        }
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    return entries;
}

namespace {

struct PoolEntry {
    float dist;
    VertexId id;
    bool expanded;
};

// Per-thread scratch reused across queries; the stamp trick avoids clearing
// the visited marks between queries.
struct SearchScratch {
    std::vector<PoolEntry> pool;
    std::vector<std::uint32_t> visit_mark;
    std::uint32_t stamp = 0;

    void prepare(std::uint32_t n, std::uint32_t L) {
        pool.clear();
        pool.reserve(static_cast<std::size_t>(L) + 1);
        if (visit_mark.size() != n) {
            visit_mark.assign(n, 0);
            stamp = 0;
        }
        ++stamp;
        if (stamp == 0) {  // wrapped; reset marks once
            std::fill(visit_mark.begin(), visit_mark.end(), 0);
            stamp = 1;
        }
    }

    bool mark_visited(VertexId v) {
        if (visit_mark[v] == stamp) return false;
        visit_mark[v] = stamp;
        return true;
    }
};

SearchResult beam_search_impl(const FixedDegreeGraph& g, const VectorDataset& ds,
                              const float* query, const SearchParams& params,
                              const std::vector<VertexId>& entries, SearchScratch& scratch) {
    scratch.prepare(g.n, params.L);
    auto& pool = scratch.pool;
    SearchStats stats;

    auto insert = [&](float dist, VertexId id) {
        auto pos = std::lower_bound(pool.begin(), pool.end(), std::make_pair(dist, id),
                                    [](const PoolEntry& a, const std::pair<float, VertexId>& b) {
                                        return a.dist != b.first ? a.dist < b.first
                                                                 : a.id < b.second;
                                    });
        if (pool.size() == params.L) {
            if (pos == pool.end()) return;
            pool.pop_back();
            pos = std::lower_bound(pool.begin(), pool.end(), std::make_pair(dist, id),
                                   [](const PoolEntry& a, const std::pair<float, VertexId>& b) {
                                       return a.dist != b.first ? a.dist < b.first
                                                                : a.id < b.second;
                                   });
        }
        pool.insert(pos, {dist, id, false});
    };

    for (VertexId e : entries) {
        if (!scratch.mark_visited(e)) continue;
        ++stats.visited;
        ++stats.distance_evals;
        insert(compute_distance(query, ds.row(e), ds.d, ds.metric), e);
    }

    const std::uint32_t max_iterations = params.effective_max_iterations();
    while (stats.hops < max_iterations) {
        auto next = std::find_if(pool.begin(), pool.end(),
                                 [](const PoolEntry& e) { return !e.expanded; });
        if (next == pool.end()) break;
        next->expanded = true;
        ++stats.hops;
        for (VertexId u : g.row_span(next->id)) {
            if (!scratch.mark_visited(u)) continue;
            ++stats.visited;
            ++stats.distance_evals;
            insert(compute_distance(query, ds.row(u), ds.d, ds.metric), u);
        }
    }

    SearchResult result;
    const std::uint32_t take = std::min<std::uint32_t>(params.k,
                                                       static_cast<std::uint32_t>(pool.size()));
    result.ids.reserve(take);
    result.distances.reserve(take);
    for (std::uint32_t i = 0; i < take; ++i) {
        result.ids.push_back(pool[i].id);
        result.distances.push_back(pool[i].dist);
    }
    result.stats = stats;
    return result;
}

void check_aligned(const FixedDegreeGraph& g, const VectorDataset& ds) {
    if (g.n != ds.n) {
        throw std::invalid_argument("search: graph and dataset disagree on vertex count");
    }
}

}  // namespace

SearchResult beam_search(const FixedDegreeGraph& g, const VectorDataset& ds, const float* query,
                         const SearchParams& params) {
    check_aligned(g, ds);
    params.validate(g.n);
    const auto entries = resolve_entry_points(params, g.n);
    SearchScratch scratch;
    return beam_search_impl(g, ds, query, params, entries, scratch);
}

std::vector<SearchResult> batch_search(const FixedDegreeGraph& g, const VectorDataset& ds,
                                       const VectorDataset& queries, const SearchParams& params) {
    check_aligned(g, ds);
    if (queries.n < 1) throw std::invalid_argument("batch_search: need at least one query");
    if (queries.d != ds.d) throw std::invalid_argument("batch_search: query dimension mismatch");
    params.validate(g.n);
    const auto entries = resolve_entry_points(params, g.n);
    std::vector<SearchResult> results(queries.n);
#pragma omp parallel
    {
        SearchScratch scratch;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t q = 0; q < static_cast<std::int64_t>(queries.n); ++q) {
            results[q] = beam_search_impl(g, ds, queries.row(static_cast<std::uint32_t>(q)),
                                          params, entries, scratch);
        }
    }
    return results;
}

std::vector<SearchResult> batch_search_serial(const FixedDegreeGraph& g, const VectorDataset& ds,
                                              const VectorDataset& queries,
                                              const SearchParams& params) {
    check_aligned(g, ds);
    if (queries.n < 1) throw std::invalid_argument("batch_search: need at least one query");
    if (queries.d != ds.d) throw std::invalid_argument("batch_search: query dimension mismatch");
    params.validate(g.n);
    const auto entries = resolve_entry_points(params, g.n);
    std::vector<SearchResult> results(queries.n);
    SearchScratch scratch;
    for (std::uint32_t q = 0; q < queries.n; ++q) {
        results[q] = beam_search_impl(g, ds, queries.row(q), params, entries, scratch);
    }
    return results;
}

}  // namespace annlab
