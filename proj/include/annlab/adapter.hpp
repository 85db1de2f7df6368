#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "annlab/graph.hpp"
#include "annlab/io.hpp"

namespace annlab {

enum class GraphFileFormat { kAdjListText, kCsrBin, kFixedBin };

GraphFileFormat parse_graph_format(const std::string& s);
const char* graph_format_name(GraphFileFormat f);

struct IngestOptions {
    // Slots per row of the resulting graph; 0 means "max observed degree".
    std::uint32_t k_cap = 0;
    // Rows longer than k_cap are rejected unless truncation is enabled, in
    // which case the first k_cap entries are kept and the drop is reported.
    bool allow_truncation = false;
};

struct TruncationReport {
    std::uint32_t truncated_rows = 0;
    std::uint64_t dropped_edges = 0;
};

// Converts an externally built topology into the unified fixed-degree
// layout. Neighbor lists are kept in file order; topology is never modified
// silently (duplicates and self-loops are rejected, truncation is reported).
FixedDegreeGraph ingest(const std::filesystem::path& file, GraphFileFormat format,
                        const IngestOptions& options = {}, TruncationReport* report = nullptr);

// fixed-bin: header (magic "FDGX", version, n, k_max as little-endian u32),
// n*k_max u32 neighbor slots (0xFFFFFFFF sentinel), then n u32 degrees.
void serialize_graph(const FixedDegreeGraph& g, const std::filesystem::path& file);
FixedDegreeGraph read_fixed_bin(const std::filesystem::path& file);

// csr-bin: header (magic "CSRX", version, n, edge_count as little-endian
// u32), n+1 u64 offsets, edge_count u32 targets.
void write_csr_bin(const FixedDegreeGraph& g, const std::filesystem::path& file);

// adjlist-text: one "ID: n1 n2 ..." line per vertex in ascending ID order.
void write_adjlist_text(const FixedDegreeGraph& g, const std::filesystem::path& file);

}  // namespace annlab
