#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "annlab/graph.hpp"
#include "annlab/permutation.hpp"

namespace annlab {

// Symmetrized (undirected) adjacency view with sorted unique rows; the
// domain of the clustering metrics.
struct UndirectedView {
    std::vector<std::uint64_t> offsets;
    std::vector<VertexId> nbrs;

    static UndirectedView from(const FixedDegreeGraph& g);

    std::span<const VertexId> row(VertexId v) const {
        return {nbrs.data() + offsets[v], static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
    }
    std::uint32_t degree(VertexId v) const {
        return static_cast<std::uint32_t>(offsets[v + 1] - offsets[v]);
    }
    std::uint32_t n() const { return static_cast<std::uint32_t>(offsets.size() - 1); }
};

// C_v = 2*T_v / (k_v*(k_v-1)) on the symmetrized graph; 0 when k_v < 2.
// Exact triangle count via sorted-adjacency intersection.
double local_clustering_coefficient(const UndirectedView& view, VertexId v);
double local_clustering_coefficient(const FixedDegreeGraph& g, VertexId v);

// Arithmetic mean of C_v over all vertices; parallel per-vertex evaluation
// with a deterministic pairwise-summed reduction.
double average_lcc(const FixedDegreeGraph& g);
double average_lcc_serial(const FixedDegreeGraph& g);

// Max |u - v| over edges under the current labeling (0 for edgeless graphs),
// or under the labeling induced by a permutation.
std::uint32_t graph_bandwidth(const FixedDegreeGraph& g);
std::uint32_t graph_bandwidth(const FixedDegreeGraph& g, const Permutation& p);

// Pearson correlation of average-tied rank vectors; throws std::domain_error
// when either side has zero rank variance.
double spearman_rank_correlation(std::span<const double> xs, std::span<const double> ys);

// Deterministic pairwise summation used by every floating-point reduction.
double pairwise_sum(std::span<const double> values);

struct GraphReport {
    std::uint32_t n = 0;
    std::uint64_t edge_count = 0;
    std::uint32_t min_in_degree = 0, max_in_degree = 0;
    std::uint32_t min_out_degree = 0, max_out_degree = 0;
    double mean_in_degree = 0.0, mean_out_degree = 0.0;
    double average_lcc = 0.0;
    std::array<std::uint64_t, 20> lcc_histogram{};  // bins over [0, 1]
    std::uint32_t bandwidth = 0;
    std::uint32_t weak_components = 0;
    double mean_edge_gap = 0.0;  // mean |u - v| over edges, current labeling

    std::string to_json() const;  // stable key order
};

GraphReport analyze(const FixedDegreeGraph& g);

}  // namespace annlab
