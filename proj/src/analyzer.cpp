#include "annlab/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace annlab {

UndirectedView UndirectedView::from(const FixedDegreeGraph& g) {
    std::vector<std::vector<VertexId>> lists(g.n);
    for (VertexId v = 0; v < g.n; ++v) {
        for (VertexId u : g.row_span(v)) {
            lists[v].push_back(u);
            lists[u].push_back(v);
        }
    }
    UndirectedView view;
    view.offsets.resize(g.n + 1, 0);
    for (VertexId v = 0; v < g.n; ++v) {
        auto& l = lists[v];
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
        view.offsets[v + 1] = view.offsets[v] + l.size();
    }
    view.nbrs.reserve(view.offsets[g.n]);
    for (auto& l : lists) view.nbrs.insert(view.nbrs.end(), l.begin(), l.end());
    return view;
}

namespace {

std::uint64_t sorted_intersection_size(std::span<const VertexId> a, std::span<const VertexId> b) {
    std::uint64_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++count;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return count;
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.empty()) return 0.0;
    if (values.size() == 1) return values[0];
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

double local_clustering_coefficient(const UndirectedView& view, VertexId v) {
    const auto row = view.row(v);
    const std::uint64_t k = row.size();
    if (k < 2) return 0.0;
    // Each triangle {v,a,b} is seen from both endpoints of the edge (a,b).
    std::uint64_t twice_triangles = 0;
    for (VertexId u : row) twice_triangles += sorted_intersection_size(row, view.row(u));
    const std::uint64_t triangles = twice_triangles / 2;
    return 2.0 * static_cast<double>(triangles) / (static_cast<double>(k) * (k - 1));
}

double local_clustering_coefficient(const FixedDegreeGraph& g, VertexId v) {
    if (v >= g.n) throw std::invalid_argument("local_clustering_coefficient: vertex out of range");
    return local_clustering_coefficient(UndirectedView::from(g), v);
}

namespace {

std::vector<double> per_vertex_lcc(const FixedDegreeGraph& g, bool parallel) {
    const UndirectedView view = UndirectedView::from(g);
    std::vector<double> values(g.n);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t v = 0; v < static_cast<std::int64_t>(g.n); ++v) {
            values[v] = local_clustering_coefficient(view, static_cast<VertexId>(v));
        }
    } else {
        for (VertexId v = 0; v < g.n; ++v) values[v] = local_clustering_coefficient(view, v);
    }
    return values;
}

// Sorting before the pairwise reduction makes the mean a function of the
// value multiset alone, so relabeling the vertices cannot move the result
// by even an ulp.
double mean_of_multiset(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace

double average_lcc(const FixedDegreeGraph& g) {
    return mean_of_multiset(per_vertex_lcc(g, true));
}

double average_lcc_serial(const FixedDegreeGraph& g) {
    return mean_of_multiset(per_vertex_lcc(g, false));
}

std::uint32_t graph_bandwidth(const FixedDegreeGraph& g) {
    std::uint32_t bw = 0;
    for (VertexId v = 0; v < g.n; ++v) {
        for (VertexId u : g.row_span(v)) {
            bw = std::max(bw, u > v ? u - v : v - u);
        }
    }
    return bw;
}

std::uint32_t graph_bandwidth(const FixedDegreeGraph& g, const Permutation& p) {
    if (p.n() != g.n) throw std::invalid_argument("graph_bandwidth: permutation size mismatch");
    std::uint32_t bw = 0;
    for (VertexId v = 0; v < g.n; ++v) {
        const VertexId pv = p.forward[v];
        for (VertexId u : g.row_span(v)) {
            const VertexId pu = p.forward[u];
            bw = std::max(bw, pu > pv ? pu - pv : pv - pu);
        }
    }
    return bw;
}

double spearman_rank_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("spearman: input lengths differ");
    }
    if (xs.size() < 2) throw std::invalid_argument("spearman: need at least two points");

    auto ranks = [](std::span<const double> v) {
        const std::size_t n = v.size();
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return v[a] != v[b] ? v[a] < v[b] : a < b;
        });
        std::vector<double> rank(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t t = i; t <= j; ++t) rank[idx[t]] = avg;  // average rank for ties
            i = j + 1;
        }
        return rank;
    };

    const auto rx = ranks(xs);
    const auto ry = ranks(ys);
    const double n = static_cast<double>(xs.size());
    const double mean = (n + 1.0) / 2.0;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::domain_error("spearman: zero rank variance (all values tied)");
    }
    return sxy / std::sqrt(sxx * syy);
}

namespace {

std::uint32_t count_weak_components(const UndirectedView& view) {
    const std::uint32_t n = view.n();
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<VertexId> stack;
    std::uint32_t components = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (visited[v]) continue;
        ++components;
        visited[v] = 1;
        stack.push_back(v);
        while (!stack.empty()) {
            const VertexId u = stack.back();
            stack.pop_back();
            for (VertexId w : view.row(u)) {
                if (!visited[w]) {
                    visited[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

}  // namespace

GraphReport analyze(const FixedDegreeGraph& g) {
    GraphReport r;
    r.n = g.n;
    r.edge_count = g.edge_count();

    const auto in_deg = g.in_degrees();
    r.min_in_degree = *std::min_element(in_deg.begin(), in_deg.end());
    r.max_in_degree = *std::max_element(in_deg.begin(), in_deg.end());
    r.min_out_degree = *std::min_element(g.degrees.begin(), g.degrees.end());
    r.max_out_degree = *std::max_element(g.degrees.begin(), g.degrees.end());
    r.mean_in_degree = static_cast<double>(r.edge_count) / g.n;
    r.mean_out_degree = r.mean_in_degree;

    const auto lcc = per_vertex_lcc(g, true);
    r.average_lcc = mean_of_multiset(lcc);
    for (double c : lcc) {
        const auto bin = std::min<std::size_t>(19, static_cast<std::size_t>(c * 20.0));
        ++r.lcc_histogram[bin];
    }

    r.bandwidth = graph_bandwidth(g);
    r.weak_components = count_weak_components(UndirectedView::from(g));

    std::uint64_t gap_total = 0;
    for (VertexId v = 0; v < g.n; ++v) {
        for (VertexId u : g.row_span(v)) gap_total += u > v ? u - v : v - u;
    }
    r.mean_edge_gap = r.edge_count == 0
                          ? 0.0
                          : static_cast<double>(gap_total) / static_cast<double>(r.edge_count);
    return r;
}

std::string GraphReport::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["edge_count"] = edge_count;
    j["min_in_degree"] = min_in_degree;
    j["mean_in_degree"] = mean_in_degree;
    j["max_in_degree"] = max_in_degree;
    j["min_out_degree"] = min_out_degree;
    j["mean_out_degree"] = mean_out_degree;
    j["max_out_degree"] = max_out_degree;
    j["average_lcc"] = average_lcc;
    j["lcc_histogram"] = lcc_histogram;
    j["bandwidth"] = bandwidth;
    j["weak_components"] = weak_components;
    j["mean_edge_gap"] = mean_edge_gap;
    return j.dump(2);
}

}  // namespace annlab
