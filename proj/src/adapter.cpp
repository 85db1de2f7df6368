#include "annlab/adapter.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <string_view>
#include <unordered_set>

namespace annlab {

GraphFileFormat parse_graph_format(const std::string& s) {
    if (s == "adjlist" || s == "adjlist-text") return GraphFileFormat::kAdjListText;
    if (s == "csr" || s == "csr-bin") return GraphFileFormat::kCsrBin;
    if (s == "fixed" || s == "fixed-bin") return GraphFileFormat::kFixedBin;
    throw std::invalid_argument("unknown graph format: " + s);
}

const char* graph_format_name(GraphFileFormat f) {
    switch (f) {
        case GraphFileFormat::kAdjListText: return "adjlist-text";
        case GraphFileFormat::kCsrBin: return "csr-bin";
        case GraphFileFormat::kFixedBin: return "fixed-bin";
    }
    return "?";
}

namespace {

constexpr std::uint32_t kFixedBinVersion = 1;
constexpr std::uint32_t kCsrBinVersion = 1;

struct ParsedLists {
    std::vector<std::vector<VertexId>> rows;
    std::uint32_t declared_k_max = 0;  // fixed-bin only
};

void check_neighbor(VertexId u, VertexId owner, std::uint32_t n,
                    const std::unordered_set<VertexId>& seen, std::uint64_t slot) {
    if (u >= n) {
        throw FormatError("neighbor ID " + std::to_string(u) + " out of range at slot " +
                              std::to_string(slot) + " of vertex " + std::to_string(owner),
                          slot);
    }
    if (u == owner) {
        throw FormatError("self-loop at slot " + std::to_string(slot) + " of vertex " +
                              std::to_string(owner),
                          slot);
    }
    if (seen.count(u)) {
        throw FormatError("duplicate edge " + std::to_string(owner) + " -> " + std::to_string(u) +
                              " at slot " + std::to_string(slot),
                          slot);
    }
}

ParsedLists parse_adjlist_text(const std::vector<std::uint8_t>& bytes) {
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    std::vector<std::vector<VertexId>> rows;
    std::uint64_t line_start = 0;
    while (line_start < text.size()) {
        std::uint64_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
        if (!blank) {
            const char* p = line.data();
            const char* end = line.data() + line.size();
            std::uint32_t id = 0;
            auto [after_id, ec] = std::from_chars(p, end, id);
            if (ec != std::errc{}) {
                throw FormatError("adjlist: expected vertex ID", line_start);
            }
            if (id != rows.size()) {
                throw FormatError("adjlist: vertex IDs must be consecutive ascending, got " +
                                      std::to_string(id) + " expecting " +
                                      std::to_string(rows.size()),
                                  line_start);
            }
            p = after_id;
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            if (p >= end || *p != ':') {
                throw FormatError("adjlist: expected ':' after vertex ID",
                                  line_start + (p - line.data()));
            }
            ++p;
            std::vector<VertexId> row;
            while (p < end) {
                while (p < end && (*p == ' ' || *p == '\t')) ++p;
                if (p >= end) break;
                std::uint32_t u = 0;
                auto [after_u, uec] = std::from_chars(p, end, u);
                if (uec != std::errc{}) {
                    throw FormatError("adjlist: malformed neighbor ID",
                                      line_start + (p - line.data()));
                }
                row.push_back(u);
                p = after_u;
            }
            rows.push_back(std::move(row));
        }
        line_start = line_end + 1;
    }
    if (rows.empty()) throw FormatError("adjlist: no vertices", 0);
    return {std::move(rows), 0};
}

ParsedLists parse_csr_bin(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 16) throw FormatError("csr-bin: truncated header", 0);
    if (std::memcmp(bytes.data(), "CSRX", 4) != 0) {
        throw FormatError("csr-bin: bad magic", 0);
    }
    const std::uint32_t version = load_le32(bytes.data() + 4);
    if (version != kCsrBinVersion) {
        throw FormatError("csr-bin: unsupported version " + std::to_string(version), 4);
    }
    const std::uint32_t n = load_le32(bytes.data() + 8);
    const std::uint32_t edge_count = load_le32(bytes.data() + 12);
    if (n < 1) throw FormatError("csr-bin: vertex count must be >= 1", 8);
    const std::uint64_t offsets_bytes = static_cast<std::uint64_t>(n + 1) * 8;
    const std::uint64_t expected = 16 + offsets_bytes + static_cast<std::uint64_t>(edge_count) * 4;
    if (bytes.size() != expected) {
        throw FormatError("csr-bin: file size " + std::to_string(bytes.size()) +
                              " does not match header (expected " + std::to_string(expected) + ")",
                          16);
    }
    std::vector<std::uint64_t> offsets(n + 1);
    for (std::uint32_t i = 0; i <= n; ++i) offsets[i] = load_le64(bytes.data() + 16 + 8ull * i);
    if (offsets[0] != 0 || offsets[n] != edge_count) {
        throw FormatError("csr-bin: offsets do not span [0, edge_count]", 16);
    }
    std::vector<std::vector<VertexId>> rows(n);
    const std::uint64_t targets_base = 16 + offsets_bytes;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (offsets[v + 1] < offsets[v]) {
            throw FormatError("csr-bin: non-monotone offsets at vertex " + std::to_string(v),
                              16 + 8ull * v);
        }
        rows[v].reserve(offsets[v + 1] - offsets[v]);
        for (std::uint64_t e = offsets[v]; e < offsets[v + 1]; ++e) {
            rows[v].push_back(load_le32(bytes.data() + targets_base + 4 * e));
        }
    }
    return {std::move(rows), 0};
}

ParsedLists parse_fixed_bin(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 16) throw FormatError("fixed-bin: truncated header", 0);
    if (std::memcmp(bytes.data(), "FDGX", 4) != 0) {
        throw FormatError("fixed-bin: bad magic", 0);
    }
    const std::uint32_t version = load_le32(bytes.data() + 4);
    if (version != kFixedBinVersion) {
        throw FormatError("fixed-bin: unsupported version " + std::to_string(version), 4);
    }
    const std::uint32_t n = load_le32(bytes.data() + 8);
    const std::uint32_t k_max = load_le32(bytes.data() + 12);
    if (n < 1) throw FormatError("fixed-bin: vertex count must be >= 1", 8);
    const std::uint64_t expected =
        16 + static_cast<std::uint64_t>(n) * k_max * 4 + static_cast<std::uint64_t>(n) * 4;
    if (bytes.size() != expected) {
        throw FormatError("fixed-bin: file size " + std::to_string(bytes.size()) +
                              " does not match header (expected " + std::to_string(expected) + ")",
                          16);
    }
    const std::uint64_t degrees_base = 16 + static_cast<std::uint64_t>(n) * k_max * 4;
    std::vector<std::vector<VertexId>> rows(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t deg = load_le32(bytes.data() + degrees_base + 4ull * v);
        if (deg > k_max) {
            throw FormatError("fixed-bin: degree of vertex " + std::to_string(v) +
                                  " exceeds k_max",
                              degrees_base + 4ull * v);
        }
        const std::uint64_t row_base = 16 + static_cast<std::uint64_t>(v) * k_max * 4;
        rows[v].reserve(deg);
        for (std::uint32_t s = 0; s < k_max; ++s) {
            const VertexId u = load_le32(bytes.data() + row_base + 4ull * s);
            if (s < deg) {
                rows[v].push_back(u);
            } else if (u != kInvalidId) {
                throw FormatError("fixed-bin: slot past degree is not the sentinel in row " +
                                      std::to_string(v),
                                  row_base + 4ull * s);
            }
        }
    }
    return {std::move(rows), k_max};
}

}  // namespace

FixedDegreeGraph ingest(const std::filesystem::path& file, GraphFileFormat format,
                        const IngestOptions& options, TruncationReport* report) {
    const auto bytes = read_file_bytes(file);
    ParsedLists parsed;
    switch (format) {
        case GraphFileFormat::kAdjListText: parsed = parse_adjlist_text(bytes); break;
        case GraphFileFormat::kCsrBin: parsed = parse_csr_bin(bytes); break;
        case GraphFileFormat::kFixedBin: parsed = parse_fixed_bin(bytes); break;
    }
    const std::uint32_t n = static_cast<std::uint32_t>(parsed.rows.size());

    // Neighbor validation happens on the parsed lists so each format's
    // parser stays a pure framing concern.
    std::unordered_set<VertexId> seen;
    std::uint32_t max_degree = 0;
    for (VertexId v = 0; v < n; ++v) {
        seen.clear();
        for (std::size_t i = 0; i < parsed.rows[v].size(); ++i) {
            check_neighbor(parsed.rows[v][i], v, n, seen, i);
            seen.insert(parsed.rows[v][i]);
        }
        max_degree = std::max(max_degree, static_cast<std::uint32_t>(parsed.rows[v].size()));
    }

    std::uint32_t k_cap = options.k_cap;
    if (k_cap == 0) k_cap = parsed.declared_k_max != 0 ? parsed.declared_k_max : max_degree;
    if (k_cap == 0) k_cap = 1;  // edgeless graph still needs a slot layout

    TruncationReport local;
    if (max_degree > k_cap) {
        if (!options.allow_truncation) {
            throw std::invalid_argument(
                "ingest: observed degree " + std::to_string(max_degree) + " exceeds k_cap " +
                std::to_string(k_cap) + " and truncation is not enabled");
        }
        for (auto& row : parsed.rows) {
            if (row.size() > k_cap) {
                local.truncated_rows += 1;
                local.dropped_edges += row.size() - k_cap;
                row.resize(k_cap);
            }
        }
    }
    if (report) *report = local;

    return graph_from_lists(parsed.rows, k_cap);
}

void serialize_graph(const FixedDegreeGraph& g, const std::filesystem::path& file) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(16 + g.neighbors.size() * 4 + g.degrees.size() * 4);
    bytes.insert(bytes.end(), {'F', 'D', 'G', 'X'});
    store_le32(bytes, kFixedBinVersion);
    store_le32(bytes, g.n);
    store_le32(bytes, g.k_max);
    for (VertexId u : g.neighbors) store_le32(bytes, u);
    for (std::uint32_t deg : g.degrees) store_le32(bytes, deg);
    write_file_bytes(file, bytes);
}

FixedDegreeGraph read_fixed_bin(const std::filesystem::path& file) {
    return ingest(file, GraphFileFormat::kFixedBin);
}

void write_csr_bin(const FixedDegreeGraph& g, const std::filesystem::path& file) {
    std::vector<std::uint8_t> bytes;
    const std::uint64_t edges = g.edge_count();
    bytes.insert(bytes.end(), {'C', 'S', 'R', 'X'});
    store_le32(bytes, kCsrBinVersion);
    store_le32(bytes, g.n);
    store_le32(bytes, static_cast<std::uint32_t>(edges));
    std::uint64_t offset = 0;
    for (VertexId v = 0; v <= g.n; ++v) {
        store_le64(bytes, offset);
        if (v < g.n) offset += g.degree(v);
    }
    for (VertexId v = 0; v < g.n; ++v) {
        for (VertexId u : g.row_span(v)) store_le32(bytes, u);
    }
    write_file_bytes(file, bytes);
}

void write_adjlist_text(const FixedDegreeGraph& g, const std::filesystem::path& file) {
    std::string text;
    for (VertexId v = 0; v < g.n; ++v) {
        text += std::to_string(v);
        text += ':';
        for (VertexId u : g.row_span(v)) {
            text += ' ';
            text += std::to_string(u);
        }
        text += '\n';
    }
    std::vector<std::uint8_t> bytes(text.begin(), text.end());
    write_file_bytes(file, bytes);
}

}  // namespace annlab
