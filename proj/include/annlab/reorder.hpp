#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "annlab/graph.hpp"
#include "annlab/permutation.hpp"

namespace annlab {

enum class ReorderAlgorithm {
    kIdentity,
    kIndegreeSort,
    kOutdegreeSort,
    kHubSort,
    kGorder,
    kRcm,
    kRandom,
};

ReorderAlgorithm parse_reorder_algorithm(const std::string& s);
const char* reorder_algorithm_name(ReorderAlgorithm a);

struct ReorderSpec {
    ReorderAlgorithm algorithm = ReorderAlgorithm::kIdentity;
    std::uint32_t window = 10;                 // gorder
    std::optional<double> hub_threshold;       // hub-sort; default mean in-degree
    std::uint64_t seed = 0;                    // random only

    std::string label() const;
};

Permutation make_permutation(const FixedDegreeGraph& g, const ReorderSpec& spec);

enum class DegreeDirection { kIn, kOut };

// Sort by degree descending, stable in original ID; rank becomes the new ID.
Permutation degree_sort(const FixedDegreeGraph& g, DegreeDirection direction);

// Vertices with in-degree strictly above the threshold move to the front,
// both groups keeping ascending original-ID order.
Permutation hub_sort(const FixedDegreeGraph& g, double threshold);
double mean_in_degree(const FixedDegreeGraph& g);

// Greedy window ordering: repeatedly place the unplaced vertex with the
// highest total score to the last min(w, placed) placed vertices, where
// score(u, v) counts directed edges between u and v (0..2) plus their
// common in-neighbors. Ties and empty scores fall back to ascending ID.
Permutation gorder(const FixedDegreeGraph& g, std::uint32_t window);

// Total score of a given sequence under the same window definition; the
// quantity the greedy pass above maximizes step by step.
std::uint64_t gorder_windowed_score(const FixedDegreeGraph& g,
                                    const std::vector<VertexId>& sequence, std::uint32_t window);

// Reverse Cuthill-McKee on the symmetrized graph: min-degree roots,
// ascending-degree frontier expansion, full sequence reversed.
Permutation rcm(const FixedDegreeGraph& g);

// Fisher-Yates with the documented PRNG; the experiment control.
Permutation random_order(std::uint32_t n, std::uint64_t seed);

// PERM file: magic "PERM", version u32, n u32, then n little-endian u32
// forward entries.
void write_perm(const std::filesystem::path& file, const Permutation& p);
Permutation read_perm(const std::filesystem::path& file);

}  // namespace annlab
