#include <algorithm>
#include <atomic>
#include <cstring>
#include <memory>
#include <vector>

#include "annlab/build.hpp"
#include "annlab/distance.hpp"
#include "annlab/rng.hpp"

namespace annlab {

namespace {

struct PoolEntry {
    float dist;
    VertexId id;
    std::uint8_t is_new;
};

inline bool entry_less(const PoolEntry& a, const PoolEntry& b) {
    return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
}

inline bool key_less(float da, VertexId ia, float db, VertexId ib) {
    return da != db ? da < db : ia < ib;
}

class Spinlock {
public:
    void lock() {
        while (flag_.test_and_set(std::memory_order_acquire)) {}
    }
    void unlock() { flag_.clear(std::memory_order_release); }

private:
    std::atomic_flag flag_;  // clear on default construction since C++20
};

// Bounded best-k candidate buffer. The retained content is the set of
// k smallest distinct (dist, id) pairs ever inserted, which is independent
// of insertion order; that is what makes the parallel build deterministic.
struct Bucket {
    std::vector<std::pair<float, VertexId>> entries;  // sorted by (dist, id)
    Spinlock lock;

    void insert(float dist, VertexId id, std::uint32_t cap) {
        lock.lock();
        const auto pos = std::lower_bound(
            entries.begin(), entries.end(), std::make_pair(dist, id),
            [](const auto& a, const auto& b) { return key_less(a.first, a.second, b.first, b.second); });
        if (pos != entries.end() && pos->first == dist && pos->second == id) {
            lock.unlock();
            return;
        }
        const std::size_t idx = static_cast<std::size_t>(pos - entries.begin());
        if (entries.size() < cap) {
            entries.insert(entries.begin() + idx, {dist, id});
        } else if (idx < entries.size()) {
            entries.pop_back();
            entries.insert(entries.begin() + idx, {dist, id});
        }
        lock.unlock();
    }
};

// k_max distinct random neighbors of v, excluding v itself.
void seed_row(const VectorDataset& ds, std::uint64_t seed, VertexId v, std::uint32_t k,
              PoolEntry* out) {
    SplitMix64 rng(hash_mix(seed, 0x6e6e64ULL, v));
    std::vector<VertexId> picks;
    picks.reserve(k);
    while (picks.size() < k) {
        const VertexId u = static_cast<VertexId>(rng.bounded(ds.n));
        if (u == v || std::find(picks.begin(), picks.end(), u) != picks.end()) continue;
        picks.push_back(u);
    }
    for (std::uint32_t i = 0; i < k; ++i) {
        out[i].dist = compute_distance(ds.row(v), ds.row(picks[i]), ds.d, ds.metric);
        out[i].id = picks[i];
        out[i].is_new = 1;
    }
    std::sort(out, out + k, entry_less);
}

void cap_list(std::vector<VertexId>& list, std::uint32_t cap, std::uint64_t seed,
              std::uint64_t iter, VertexId owner) {
    if (list.size() <= cap) return;
    // Deterministic pseudo-random subset: order by a seeded hash of the pair,
    // ID as tie-break so the comparator stays a strict weak order.
    std::sort(list.begin(), list.end(), [&](VertexId a, VertexId b) {
        const auto ha = hash_mix(seed, iter * 0x51ED2701ULL + owner, a);
        const auto hb = hash_mix(seed, iter * 0x51ED2701ULL + owner, b);
        return ha != hb ? ha < hb : a < b;
    });
    list.resize(cap);
    std::sort(list.begin(), list.end());
}

}  // namespace

FixedDegreeGraph build_nn_descent(const VectorDataset& ds, const BuildParams& params,
                                  NnDescentStats* stats) {
    params.validate(ds.n);
    const std::uint32_t n = ds.n;
    const std::uint32_t k = params.k_max;
    const std::uint32_t sample_count =
        std::max<std::uint32_t>(1, static_cast<std::uint32_t>(params.sample_rate * k + 0.5f));

    std::vector<PoolEntry> pools(static_cast<std::size_t>(n) * k);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < static_cast<std::int64_t>(n); ++v) {
        seed_row(ds, params.seed, static_cast<VertexId>(v), k,
                 pools.data() + static_cast<std::size_t>(v) * k);
    }

    if (stats) {
        stats->iterations = 0;
        stats->update_fractions.clear();
    }

    std::vector<std::vector<VertexId>> new_lists(n), old_lists(n);
    std::vector<std::vector<VertexId>> rev_new(n), rev_old(n);
    std::vector<Bucket> buckets(n);

    for (std::uint32_t iter = 0; iter < params.max_iters; ++iter) {
        // Sampling pass: pick up to sample_count of the closest new entries
        // per vertex (consuming their flag), and collect the old ones.
#pragma omp parallel for schedule(static)
        for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(n); ++vi) {
            const VertexId v = static_cast<VertexId>(vi);
            auto& nl = new_lists[v];
            auto& ol = old_lists[v];
            nl.clear();
            ol.clear();
            PoolEntry* pool = pools.data() + static_cast<std::size_t>(v) * k;
            for (std::uint32_t s = 0; s < k; ++s) {
                if (pool[s].is_new) {
                    if (nl.size() < sample_count) {
                        nl.push_back(pool[s].id);
                        pool[s].is_new = 0;
                    }
                } else {
                    ol.push_back(pool[s].id);
                }
            }
            rev_new[v].clear();
            rev_old[v].clear();
        }

        for (VertexId v = 0; v < n; ++v) {
            for (VertexId u : new_lists[v]) rev_new[u].push_back(v);
            for (VertexId u : old_lists[v]) rev_old[u].push_back(v);
        }

        // Local join: every pair of sampled new neighbors, and every
        // (new, old) pair, proposes each endpoint to the other's pool.
#pragma omp parallel
        {
            std::vector<VertexId> join_new, join_old;
#pragma omp for schedule(dynamic, 32)
            for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(n); ++vi) {
                const VertexId v = static_cast<VertexId>(vi);
                join_new = new_lists[v];
                cap_list(rev_new[v], k, params.seed, iter, v);
                join_new.insert(join_new.end(), rev_new[v].begin(), rev_new[v].end());
                std::sort(join_new.begin(), join_new.end());
                join_new.erase(std::unique(join_new.begin(), join_new.end()), join_new.end());

                join_old = old_lists[v];
                cap_list(rev_old[v], k, params.seed, iter, v);
                join_old.insert(join_old.end(), rev_old[v].begin(), rev_old[v].end());
                std::sort(join_old.begin(), join_old.end());
                join_old.erase(std::unique(join_old.begin(), join_old.end()), join_old.end());

                auto propose = [&](VertexId a, VertexId b) {
                    const float dist = compute_distance(ds.row(a), ds.row(b), ds.d, ds.metric);
                    const PoolEntry* pa = pools.data() + static_cast<std::size_t>(a) * k;
                    if (key_less(dist, b, pa[k - 1].dist, pa[k - 1].id)) {
                        buckets[a].insert(dist, b, k);
                    }
                    const PoolEntry* pb = pools.data() + static_cast<std::size_t>(b) * k;
                    if (key_less(dist, a, pb[k - 1].dist, pb[k - 1].id)) {
                        buckets[b].insert(dist, a, k);
                    }
                };

                for (std::size_t i = 0; i < join_new.size(); ++i) {
                    for (std::size_t j = i + 1; j < join_new.size(); ++j) {
                        propose(join_new[i], join_new[j]);
                    }
                    for (VertexId o : join_old) {
                        if (o != join_new[i]) propose(join_new[i], o);
                    }
                }
            }
        }

        // Merge pass: each pool becomes the best k of (pool union bucket).
        std::uint64_t updates = 0;
#pragma omp parallel
        {
            std::vector<PoolEntry> merged;
            merged.reserve(k);
            std::uint64_t local_updates = 0;
#pragma omp for schedule(static)
            for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(n); ++vi) {
                const VertexId v = static_cast<VertexId>(vi);
                auto& bucket = buckets[v].entries;
                if (bucket.empty()) continue;
                PoolEntry* pool = pools.data() + static_cast<std::size_t>(v) * k;
                merged.clear();
                std::uint32_t pi = 0;
                std::size_t bi = 0;
                while (merged.size() < k) {
                    const bool pool_left = pi < k;
                    const bool bucket_left = bi < bucket.size();
                    if (!pool_left && !bucket_left) break;
                    bool take_pool;
                    if (pool_left && bucket_left) {
                        if (pool[pi].dist == bucket[bi].first && pool[pi].id == bucket[bi].second) {
                            ++bi;  // candidate already present, keep pool flag
                            continue;
                        }
                        take_pool = key_less(pool[pi].dist, pool[pi].id, bucket[bi].first,
                                             bucket[bi].second);
                    } else {
                        take_pool = pool_left;
                    }
                    if (take_pool) {
                        merged.push_back(pool[pi++]);
                    } else {
                        merged.push_back({bucket[bi].first, bucket[bi].second, 1});
                        ++bi;
                        ++local_updates;
                    }
                }
                std::copy(merged.begin(), merged.end(), pool);
                bucket.clear();
            }
#pragma omp atomic
            updates += local_updates;
        }

        const double fraction =
            static_cast<double>(updates) / (static_cast<double>(n) * static_cast<double>(k));
        if (stats) {
            ++stats->iterations;
            stats->update_fractions.push_back(fraction);
        }
        if (fraction < params.convergence_delta) break;
    }

    FixedDegreeGraph g;
    g.n = n;
    g.k_max = k;
    g.neighbors.resize(static_cast<std::size_t>(n) * k);
    g.degrees.assign(n, k);
    for (std::size_t i = 0; i < pools.size(); ++i) g.neighbors[i] = pools[i].id;
    return g;
}

}  // namespace annlab
