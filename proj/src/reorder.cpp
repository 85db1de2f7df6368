#include "annlab/reorder.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <numeric>
#include <queue>

#include "annlab/io.hpp"
#include "annlab/rng.hpp"

namespace annlab {

ReorderAlgorithm parse_reorder_algorithm(const std::string& s) {
    if (s == "identity") return ReorderAlgorithm::kIdentity;
    if (s == "indegree-sort" || s == "indegree") return ReorderAlgorithm::kIndegreeSort;
    if (s == "outdegree-sort" || s == "outdegree") return ReorderAlgorithm::kOutdegreeSort;
    if (s == "hub-sort" || s == "hubsort") return ReorderAlgorithm::kHubSort;
    if (s == "gorder") return ReorderAlgorithm::kGorder;
    if (s == "rcm") return ReorderAlgorithm::kRcm;
    if (s == "random") return ReorderAlgorithm::kRandom;
    throw std::invalid_argument("unknown reorder algorithm: " + s);
}

const char* reorder_algorithm_name(ReorderAlgorithm a) {
    switch (a) {
        case ReorderAlgorithm::kIdentity: return "identity";
        case ReorderAlgorithm::kIndegreeSort: return "indegree-sort";
        case ReorderAlgorithm::kOutdegreeSort: return "outdegree-sort";
        case ReorderAlgorithm::kHubSort: return "hub-sort";
        case ReorderAlgorithm::kGorder: return "gorder";
        case ReorderAlgorithm::kRcm: return "rcm";
        case ReorderAlgorithm::kRandom: return "random";
    }
    return "?";
}

std::string ReorderSpec::label() const {
    std::string s = reorder_algorithm_name(algorithm);
    if (algorithm == ReorderAlgorithm::kGorder) s += "-w" + std::to_string(window);
    if (algorithm == ReorderAlgorithm::kHubSort && hub_threshold) {
        s += "-t" + std::to_string(*hub_threshold);
    }
    if (algorithm == ReorderAlgorithm::kRandom) s += "-s" + std::to_string(seed);
    return s;
}

double mean_in_degree(const FixedDegreeGraph& g) {
    return static_cast<double>(g.edge_count()) / g.n;
}

Permutation make_permutation(const FixedDegreeGraph& g, const ReorderSpec& spec) {
    switch (spec.algorithm) {
        case ReorderAlgorithm::kIdentity: return Permutation::identity(g.n);
        case ReorderAlgorithm::kIndegreeSort: return degree_sort(g, DegreeDirection::kIn);
        case ReorderAlgorithm::kOutdegreeSort: return degree_sort(g, DegreeDirection::kOut);
        case ReorderAlgorithm::kHubSort:
            return hub_sort(g, spec.hub_threshold.value_or(mean_in_degree(g)));
        case ReorderAlgorithm::kGorder: return gorder(g, spec.window);
        case ReorderAlgorithm::kRcm: return rcm(g);
        case ReorderAlgorithm::kRandom: return random_order(g.n, spec.seed);
    }
    throw std::invalid_argument("make_permutation: bad algorithm");
}

namespace {

Permutation ranks_from_order(const std::vector<VertexId>& order) {
    std::vector<VertexId> forward(order.size());
    for (std::uint32_t pos = 0; pos < order.size(); ++pos) forward[order[pos]] = pos;
    return Permutation::from_forward(std::move(forward));
}

// Symmetrized adjacency with sorted unique neighbor lists.
struct Undirected {
    std::vector<std::uint32_t> offsets;
    std::vector<VertexId> nbrs;

    std::span<const VertexId> row(VertexId v) const {
        return {nbrs.data() + offsets[v], offsets[v + 1] - offsets[v]};
    }
    std::uint32_t degree(VertexId v) const { return offsets[v + 1] - offsets[v]; }
};

Undirected symmetrize(const FixedDegreeGraph& g) {
    std::vector<std::vector<VertexId>> lists(g.n);
    for (VertexId v = 0; v < g.n; ++v) {
        for (VertexId u : g.row_span(v)) {
            lists[v].push_back(u);
            lists[u].push_back(v);
        }
    }
    Undirected und;
    und.offsets.resize(g.n + 1, 0);
    for (VertexId v = 0; v < g.n; ++v) {
        auto& l = lists[v];
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        und.offsets[v + 1] = und.offsets[v] + static_cast<std::uint32_t>(l.size());
    }
    und.nbrs.reserve(und.offsets[g.n]);
    for (auto& l : lists) und.nbrs.insert(und.nbrs.end(), l.begin(), l.end());
    return und;
}

}  // namespace

Permutation degree_sort(const FixedDegreeGraph& g, DegreeDirection direction) {
    const std::vector<std::uint32_t> deg =
        direction == DegreeDirection::kIn ? g.in_degrees() : g.out_degrees();
    std::vector<VertexId> order(g.n);
    std::iota(order.begin(), order.end(), VertexId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return deg[a] > deg[b]; });
    return ranks_from_order(order);
}

Permutation hub_sort(const FixedDegreeGraph& g, double threshold) {
    if (threshold < 0) throw std::invalid_argument("hub_sort: threshold must be >= 0");
    const std::vector<std::uint32_t> in_deg = g.in_degrees();
    std::vector<VertexId> forward(g.n);
    VertexId next = 0;
    for (VertexId v = 0; v < g.n; ++v) {
        if (in_deg[v] > threshold) forward[v] = next++;
    }
    for (VertexId v = 0; v < g.n; ++v) {
        if (!(in_deg[v] > threshold)) forward[v] = next++;
    }
    return Permutation::from_forward(std::move(forward));
}

Permutation gorder(const FixedDegreeGraph& g, std::uint32_t window) {
    if (window < 1) throw std::invalid_argument("gorder: window must be >= 1");
    const std::uint32_t n = g.n;

    // In-neighbor lists, needed for the sibling (common in-neighbor) score.
    std::vector<std::uint32_t> in_off(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId u : g.row_span(v)) ++in_off[u + 1];
    }
    for (VertexId v = 0; v < n; ++v) in_off[v + 1] += in_off[v];
    std::vector<VertexId> in_nbrs(in_off[n]);
    {
        std::vector<std::uint32_t> cursor(in_off.begin(), in_off.end() - 1);
        for (VertexId v = 0; v < n; ++v) {
            for (VertexId u : g.row_span(v)) in_nbrs[cursor[u]++] = v;
        }
    }

    std::vector<std::int64_t> score(n, 0);
    std::vector<std::uint8_t> placed(n, 0);

    // Lazy max-heap of (score, id); stale entries are skipped on pop.
    using HeapEntry = std::pair<std::int64_t, VertexId>;
    auto heap_less = [](const HeapEntry& a, const HeapEntry& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    };
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, decltype(heap_less)> heap(heap_less);

    // Enumerates every score relationship instance of a window vertex:
    // its out-edges, its in-edges, and the out-edges of its in-neighbors
    // (one instance per shared in-neighbor).
    auto adjust = [&](VertexId ve, std::int64_t delta) {
        auto touch = [&](VertexId u) {
            if (placed[u] || u == ve) return;
            score[u] += delta;
            heap.push({score[u], u});
        };
        for (VertexId u : g.row_span(ve)) touch(u);
        for (std::uint32_t i = in_off[ve]; i < in_off[ve + 1]; ++i) {
            const VertexId w = in_nbrs[i];
            touch(w);
            for (VertexId u : g.row_span(w)) touch(u);
        }
    };

    // Start: maximum in-degree, ties ascending ID.
    VertexId start = 0;
    for (VertexId v = 1; v < n; ++v) {
        const std::uint32_t dv = in_off[v + 1] - in_off[v];
        const std::uint32_t ds = in_off[start + 1] - in_off[start];
        if (dv > ds) start = v;
    }

    std::vector<VertexId> order;
    order.reserve(n);
    std::deque<VertexId> win;
    VertexId min_unplaced = 0;

    for (std::uint32_t step = 0; step < n; ++step) {
        VertexId v;
        if (step == 0) {
            v = start;
        } else {
            v = kInvalidId;
            while (!heap.empty()) {
                const auto [s, u] = heap.top();
                if (placed[u] || score[u] != s) {
                    heap.pop();
                    continue;
                }
                if (s > 0) v = u;
                break;
            }
            if (v == kInvalidId) {
                // All current scores are zero; ascending-ID tie break.
                while (placed[min_unplaced]) ++min_unplaced;
                v = min_unplaced;
            }
        }
        placed[v] = 1;
        order.push_back(v);
        win.push_back(v);
        adjust(v, +1);
        if (win.size() > window) {
            adjust(win.front(), -1);
            win.pop_front();
        }
    }
    return ranks_from_order(order);
}

std::uint64_t gorder_windowed_score(const FixedDegreeGraph& g,
                                    const std::vector<VertexId>& sequence, std::uint32_t window) {
    // Pairwise score via in-neighbor sets; quadratic in the window, meant
    // for verification and small exhaustive checks.
    std::vector<std::vector<VertexId>> in_lists(g.n);
    for (VertexId v = 0; v < g.n; ++v) {
        for (VertexId u : g.row_span(v)) in_lists[u].push_back(v);
    }
    for (auto& l : in_lists) std::sort(l.begin(), l.end());

    auto has_edge = [&](VertexId from, VertexId to) {
        const auto& l = in_lists[to];
        return std::binary_search(l.begin(), l.end(), from);
    };
    auto pair_score = [&](VertexId a, VertexId b) {
        std::uint64_t s = 0;
        if (has_edge(a, b)) ++s;
        if (has_edge(b, a)) ++s;
        const auto& la = in_lists[a];
        const auto& lb = in_lists[b];
        std::size_t i = 0, j = 0;
        while (i < la.size() && j < lb.size()) {
            if (la[i] == lb[j]) {
                ++s;
                ++i;
                ++j;
            } else if (la[i] < lb[j]) {
                ++i;
            } else {
                ++j;
            }
        }
        return s;
    };

    std::uint64_t total = 0;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        for (std::size_t j = lo; j < i; ++j) total += pair_score(sequence[i], sequence[j]);
    }
    return total;
}

Permutation rcm(const FixedDegreeGraph& g) {
    const Undirected und = symmetrize(g);
    const std::uint32_t n = g.n;

    // Roots in ascending (symmetrized degree, ID); degrees are static so the
    // root order can be precomputed.
    std::vector<VertexId> roots(n);
    std::iota(roots.begin(), roots.end(), VertexId{0});
    std::stable_sort(roots.begin(), roots.end(),
                     [&](VertexId a, VertexId b) { return und.degree(a) < und.degree(b); });

    std::vector<std::uint8_t> visited(n, 0);
    std::vector<VertexId> order;
    order.reserve(n);
    std::vector<VertexId> frontier_buf;

    std::size_t root_cursor = 0;
    std::size_t head = 0;
    while (order.size() < n) {
        while (visited[roots[root_cursor]]) ++root_cursor;
        const VertexId root = roots[root_cursor];
        visited[root] = 1;
        order.push_back(root);
        while (head < order.size()) {
            const VertexId v = order[head++];
            frontier_buf.clear();
            for (VertexId u : und.row(v)) {
                if (!visited[u]) frontier_buf.push_back(u);
            }
            std::stable_sort(frontier_buf.begin(), frontier_buf.end(), [&](VertexId a, VertexId b) {
                return und.degree(a) < und.degree(b);
            });
            for (VertexId u : frontier_buf) {
                visited[u] = 1;
                order.push_back(u);
            }
        }
    }
    std::reverse(order.begin(), order.end());
    return ranks_from_order(order);
}

Permutation random_order(std::uint32_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_order: n must be >= 1");
    SplitMix64 rng(seed);
    std::vector<VertexId> forward(n);
    std::iota(forward.begin(), forward.end(), VertexId{0});
    for (std::uint32_t i = n - 1; i > 0; --i) {
        const std::uint32_t j = static_cast<std::uint32_t>(rng.bounded(i + 1));
        std::swap(forward[i], forward[j]);
    }
    return Permutation::from_forward(std::move(forward));
}

void write_perm(const std::filesystem::path& file, const Permutation& p) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(12 + p.forward.size() * 4);
    bytes.insert(bytes.end(), {'P', 'E', 'R', 'M'});
    store_le32(bytes, 1);
    store_le32(bytes, p.n());
    for (VertexId v : p.forward) store_le32(bytes, v);
    write_file_bytes(file, bytes);
}

Permutation read_perm(const std::filesystem::path& file) {
    const auto bytes = read_file_bytes(file);
    if (bytes.size() < 12) throw FormatError("perm: truncated header", 0);
    if (std::memcmp(bytes.data(), "PERM", 4) != 0) throw FormatError("perm: bad magic", 0);
    const std::uint32_t version = load_le32(bytes.data() + 4);
    if (version != 1) throw FormatError("perm: unsupported version " + std::to_string(version), 4);
    const std::uint32_t n = load_le32(bytes.data() + 8);
    if (bytes.size() != 12 + static_cast<std::uint64_t>(n) * 4) {
        throw FormatError("perm: file size does not match header", 8);
    }
    std::vector<VertexId> forward(n);
    for (std::uint32_t i = 0; i < n; ++i) forward[i] = load_le32(bytes.data() + 12 + 4ull * i);
    return Permutation::from_forward(std::move(forward));
}

}  // namespace annlab
