#include "annlab/graph.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

namespace annlab {

std::uint64_t FixedDegreeGraph::edge_count() const {
    std::uint64_t total = 0;
    for (std::uint32_t deg : degrees) total += deg;
    return total;
}

FixedDegreeGraph FixedDegreeGraph::create(std::uint32_t n, std::uint32_t k_max,
                                          std::vector<VertexId> neighbors,
                                          std::vector<std::uint32_t> degrees) {
    FixedDegreeGraph g;
    g.n = n;
    g.k_max = k_max;
    g.neighbors = std::move(neighbors);
    g.degrees = std::move(degrees);
    g.validate();
    return g;
}

void FixedDegreeGraph::validate() const {
    if (n < 1) throw std::invalid_argument("FixedDegreeGraph: n must be >= 1");
    if (neighbors.size() != static_cast<std::size_t>(n) * k_max) {
        throw std::invalid_argument("FixedDegreeGraph: neighbor array length mismatch");
    }
    if (degrees.size() != n) {
        throw std::invalid_argument("FixedDegreeGraph: degree array length mismatch");
    }
    std::unordered_set<VertexId> seen;
    for (VertexId v = 0; v < n; ++v) {
        const std::uint32_t deg = degrees[v];
        if (deg > k_max) {
            throw std::invalid_argument("FixedDegreeGraph: degree of vertex " +
                                        std::to_string(v) + " exceeds k_max");
        }
        const VertexId* r = row(v);
        seen.clear();
        for (std::uint32_t s = 0; s < k_max; ++s) {
            const VertexId u = r[s];
            if (s < deg) {
                if (u >= n) {
                    throw std::invalid_argument("FixedDegreeGraph: out-of-range neighbor " +
                                                std::to_string(u) + " in row " + std::to_string(v));
                }
                if (u == v) {
                    throw std::invalid_argument("FixedDegreeGraph: self-loop at vertex " +
                                                std::to_string(v));
                }
                if (!seen.insert(u).second) {
                    throw std::invalid_argument("FixedDegreeGraph: duplicate neighbor " +
                                                std::to_string(u) + " in row " + std::to_string(v));
                }
            } else if (u != kInvalidId) {
                throw std::invalid_argument("FixedDegreeGraph: slot " + std::to_string(s) +
                                            " of row " + std::to_string(v) +
                                            " past degree is not the sentinel");
            }
        }
    }
}

std::vector<std::uint32_t> FixedDegreeGraph::in_degrees() const {
    std::vector<std::uint32_t> in(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId u : row_span(v)) ++in[u];
    }
    return in;
}

FixedDegreeGraph graph_from_lists(const std::vector<std::vector<VertexId>>& lists,
                                  std::uint32_t k_max) {
    const std::uint32_t n = static_cast<std::uint32_t>(lists.size());
    FixedDegreeGraph g;
    g.n = n;
    g.k_max = k_max;
    g.neighbors.assign(static_cast<std::size_t>(n) * k_max, kInvalidId);
    g.degrees.assign(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        const auto& list = lists[v];
        if (list.size() > k_max) {
            throw std::invalid_argument("graph_from_lists: row " + std::to_string(v) +
                                        " longer than k_max");
        }
        g.degrees[v] = static_cast<std::uint32_t>(list.size());
        std::copy(list.begin(), list.end(),
                  g.neighbors.begin() + static_cast<std::size_t>(v) * k_max);
    }
    g.validate();
    return g;
}

}  // namespace annlab
