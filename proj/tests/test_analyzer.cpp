#include <doctest.h>

#include <cmath>

#include "annlab/analyzer.hpp"
#include "annlab/reorder.hpp"
#include "test_util.hpp"

using namespace annlab;

namespace {

FixedDegreeGraph triangle() { return graph_from_lists({{1, 2}, {0, 2}, {0, 1}}, 2); }

// Independent LCC oracle: for every unordered neighbor pair, test adjacency
// directly on the symmetrized graph. O(n * k^2).
double lcc_brute_force(const FixedDegreeGraph& g, VertexId v) {
    const auto view = UndirectedView::from(g);
    const auto row = view.row(v);
    const std::uint64_t k = row.size();
    if (k < 2) return 0.0;
    auto adjacent = [&](VertexId a, VertexId b) {
        const auto ra = view.row(a);
        return std::find(ra.begin(), ra.end(), b) != ra.end();
    };
    std::uint64_t triangles = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        for (std::size_t j = i + 1; j < row.size(); ++j) {
            if (adjacent(row[i], row[j])) ++triangles;
        }
    }
    return 2.0 * static_cast<double>(triangles) / (static_cast<double>(k) * (k - 1));
}

}  // namespace

TEST_CASE("lcc: triangle vertices have coefficient 1") {
    const auto g = triangle();
    for (VertexId v = 0; v < 3; ++v) CHECK(local_clustering_coefficient(g, v) == 1.0);
    CHECK(average_lcc(g) == 1.0);
}

TEST_CASE("lcc: star center is 0") {
    const auto g = graph_from_lists({{1, 2, 3}, {}, {}, {}}, 3);
    CHECK(local_clustering_coefficient(g, 0) == 0.0);
    // leaves have symmetrized degree 1 -> defined as 0
    CHECK(local_clustering_coefficient(g, 1) == 0.0);
    CHECK(average_lcc(g) == 0.0);
}

TEST_CASE("lcc: perfect matching is 0 everywhere") {
    const auto g = graph_from_lists({{1}, {0}, {3}, {2}}, 1);
    CHECK(average_lcc(g) == 0.0);
}

TEST_CASE("lcc: matches the brute-force oracle on random graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = test::random_graph(200, 6, 200 + seed);
        const auto view = UndirectedView::from(g);
        for (VertexId v = 0; v < g.n; v += 7) {
            CHECK(local_clustering_coefficient(view, v) ==
                  doctest::Approx(lcc_brute_force(g, v)).epsilon(1e-12));
        }
    }
}

TEST_CASE("lcc: average is invariant under permutation, exactly") {
    const auto g = test::random_graph(150, 8, 31);
    const double base = average_lcc(g);
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto p = random_order(g.n, seed);
        CHECK(average_lcc(apply_permutation(g, p)) == base);
    }
}

TEST_CASE("lcc: parallel equals serial") {
    const auto g = test::random_graph(300, 8, 37);
    CHECK(average_lcc(g) == average_lcc_serial(g));
}

TEST_CASE("bandwidth: path, edgeless, reversal symmetry") {
    const auto path = graph_from_lists({{1}, {2}, {3}, {}}, 1);
    CHECK(graph_bandwidth(path) == 1);

    const auto edgeless = graph_from_lists({{}, {}}, 1);
    CHECK(graph_bandwidth(edgeless) == 0);

    // reversal labeling preserves bandwidth
    std::vector<VertexId> rev(4);
    for (VertexId v = 0; v < 4; ++v) rev[v] = 3 - v;
    CHECK(graph_bandwidth(path, Permutation::from_forward(rev)) == 1);
}

TEST_CASE("spearman: reference values") {
    const std::vector<double> xs{1, 2, 3, 4};
    CHECK(spearman_rank_correlation(xs, {std::vector<double>{2, 3, 9, 20}}) == 1.0);
    CHECK(spearman_rank_correlation(xs, {std::vector<double>{20, 9, 3, 2}}) == -1.0);

    // ranks of (10,30,20,40) are (1,3,2,4): d^2 = (0,1,1,0), rs = 1 - 6*2/(4*15)
    const std::vector<double> ys{10, 30, 20, 40};
    CHECK(spearman_rank_correlation(xs, ys) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("spearman: zero variance is an error, not NaN") {
    const std::vector<double> xs{1, 2, 3};
    const std::vector<double> flat{5, 5, 5};
    CHECK_THROWS_AS(spearman_rank_correlation(xs, flat), std::domain_error);
    CHECK_THROWS_AS(spearman_rank_correlation(flat, xs), std::domain_error);
    CHECK_THROWS_AS(spearman_rank_correlation(xs, {std::vector<double>{1.0}}),
                    std::invalid_argument);
}

TEST_CASE("spearman: invariant under strictly monotone transforms") {
    const std::vector<double> xs{0.3, 1.7, 0.9, 2.5, 2.1};
    const std::vector<double> ys{4.0, 2.0, 8.0, 1.0, 9.0};
    const double base = spearman_rank_correlation(xs, ys);

    std::vector<double> exp_xs, cubed_ys;
    for (double x : xs) exp_xs.push_back(std::exp(x));
    for (double y : ys) cubed_ys.push_back(y * y * y);
    CHECK(spearman_rank_correlation(exp_xs, ys) == base);
    CHECK(spearman_rank_correlation(xs, cubed_ys) == base);
}

TEST_CASE("spearman: average ranks for ties") {
    // xs straight, ys has a tie on the middle pair
    const std::vector<double> xs{1, 2, 3, 4};
    const std::vector<double> ys{1, 2, 2, 3};
    // rank(ys) = (1, 2.5, 2.5, 4); Pearson of (1,2,3,4) with it:
    // cov = 4.5, sxx = 5, syy = 4.5 -> rs = 4.5/sqrt(22.5) = 0.94868...
    CHECK(spearman_rank_correlation(xs, ys) ==
          doctest::Approx(4.5 / std::sqrt(5.0 * 4.5)).epsilon(1e-12));
}

TEST_CASE("analyze: full report on a known graph") {
    const auto g = triangle();
    const auto r = analyze(g);
    CHECK(r.n == 3);
    CHECK(r.edge_count == 6);
    CHECK(r.min_in_degree == 2);
    CHECK(r.max_out_degree == 2);
    CHECK(r.average_lcc == 1.0);
    CHECK(r.lcc_histogram[19] == 3);  // all vertices in the top bin
    CHECK(r.bandwidth == 2);
    CHECK(r.weak_components == 1);
    CHECK(r.mean_edge_gap == doctest::Approx(8.0 / 6.0));

    const std::string json = r.to_json();
    CHECK(json.find("\"average_lcc\"") != std::string::npos);
    CHECK(json.find("\"weak_components\"") != std::string::npos);
}

TEST_CASE("analyze: disconnected components are counted") {
    const auto g = graph_from_lists({{1}, {0}, {3}, {2}}, 1);
    CHECK(analyze(g).weak_components == 2);
}
