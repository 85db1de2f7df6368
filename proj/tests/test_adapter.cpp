#include <doctest.h>

#include "annlab/adapter.hpp"
#include "test_util.hpp"

using namespace annlab;

namespace {

void write_text(const std::string& path, const std::string& text) {
    write_file_bytes(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

}  // namespace

TEST_CASE("ingest: adjacency-list text") {
    test::TempDir dir("adjlist");
    write_text(dir.file("g.txt"), "0: 1 2\n1: 0\n\n2: 0\n");
    IngestOptions opts;
    opts.k_cap = 4;
    const auto g = ingest(dir.file("g.txt"), GraphFileFormat::kAdjListText, opts);
    CHECK(g.n == 3);
    CHECK(g.k_max == 4);
    CHECK(g.degrees == std::vector<std::uint32_t>{2, 1, 1});
    CHECK(g.row(0)[0] == 1);
    CHECK(g.row(0)[1] == 2);
    CHECK(g.row(0)[2] == kInvalidId);  // padded
}

TEST_CASE("ingest: csr-bin encodes the same graph") {
    test::TempDir dir("csr");
    // offsets [0,2,3,4], targets [1,2,0,0]
    std::vector<std::uint8_t> bytes;
    bytes.insert(bytes.end(), {'C', 'S', 'R', 'X'});
    store_le32(bytes, 1);
    store_le32(bytes, 3);
    store_le32(bytes, 4);
    for (std::uint64_t off : {0, 2, 3, 4}) store_le64(bytes, off);
    for (std::uint32_t t : {1, 2, 0, 0}) store_le32(bytes, t);
    write_file_bytes(dir.file("g.csr"), bytes);

    IngestOptions opts;
    opts.k_cap = 4;
    const auto g = ingest(dir.file("g.csr"), GraphFileFormat::kCsrBin, opts);

    write_text(dir.file("g.txt"), "0: 1 2\n1: 0\n2: 0\n");
    const auto from_text = ingest(dir.file("g.txt"), GraphFileFormat::kAdjListText, opts);
    CHECK(g.neighbors == from_text.neighbors);
    CHECK(g.degrees == from_text.degrees);
}

TEST_CASE("ingest: topology preserved on random graph round trips") {
    test::TempDir dir("roundtrip");
    const auto g = test::random_graph(80, 7, 19);

    serialize_graph(g, dir.file("g.fdg"));
    const auto via_fixed = ingest(dir.file("g.fdg"), GraphFileFormat::kFixedBin);
    CHECK(test::edge_set(via_fixed) == test::edge_set(g));

    write_csr_bin(g, dir.file("g.csr"));
    const auto via_csr = ingest(dir.file("g.csr"), GraphFileFormat::kCsrBin);
    CHECK(test::edge_set(via_csr) == test::edge_set(g));

    write_adjlist_text(g, dir.file("g.txt"));
    const auto via_text = ingest(dir.file("g.txt"), GraphFileFormat::kAdjListText);
    CHECK(test::edge_set(via_text) == test::edge_set(g));
}

TEST_CASE("serialize: byte-identical round trip") {
    test::TempDir dir("serialize");
    const auto g = test::random_graph(40, 5, 23);
    serialize_graph(g, dir.file("a.fdg"));
    serialize_graph(ingest(dir.file("a.fdg"), GraphFileFormat::kFixedBin), dir.file("b.fdg"));
    CHECK(read_file_bytes(dir.file("a.fdg")) == read_file_bytes(dir.file("b.fdg")));
}

TEST_CASE("serialize: single vertex with no edges") {
    test::TempDir dir("single");
    FixedDegreeGraph g;
    g.n = 1;
    g.k_max = 3;
    g.neighbors.assign(3, kInvalidId);
    g.degrees = {0};
    serialize_graph(g, dir.file("one.fdg"));
    const auto bytes = read_file_bytes(dir.file("one.fdg"));
    CHECK(bytes.size() == 16 + 3 * 4 + 4);
    for (int i = 16; i < 28; ++i) CHECK(bytes[i] == 0xFF);
    CHECK(load_le32(bytes.data() + 28) == 0);

    const auto back = ingest(dir.file("one.fdg"), GraphFileFormat::kFixedBin);
    CHECK(back.n == 1);
    CHECK(back.degree(0) == 0);
}

TEST_CASE("ingest: rejects malformed structure with positions") {
    test::TempDir dir("reject");

    write_text(dir.file("range.txt"), "0: 1 7\n1: 0\n");
    CHECK_THROWS_AS(ingest(dir.file("range.txt"), GraphFileFormat::kAdjListText), FormatError);

    write_text(dir.file("selfloop.txt"), "0: 0\n");
    CHECK_THROWS_AS(ingest(dir.file("selfloop.txt"), GraphFileFormat::kAdjListText), FormatError);

    write_text(dir.file("dup.txt"), "0: 1 1\n1: 0\n");
    try {
        ingest(dir.file("dup.txt"), GraphFileFormat::kAdjListText);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }

    write_text(dir.file("order.txt"), "1: 0\n0: 1\n");
    CHECK_THROWS_AS(ingest(dir.file("order.txt"), GraphFileFormat::kAdjListText), FormatError);
}

TEST_CASE("ingest: corrupted headers rejected with offsets") {
    test::TempDir dir("headers");
    const auto g = test::random_graph(10, 3, 1);

    serialize_graph(g, dir.file("g.fdg"));
    auto bytes = read_file_bytes(dir.file("g.fdg"));
    bytes[0] = 'X';
    write_file_bytes(dir.file("badmagic.fdg"), bytes);
    try {
        ingest(dir.file("badmagic.fdg"), GraphFileFormat::kFixedBin);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.offset() == 0);
    }

    write_csr_bin(g, dir.file("g.csr"));
    auto csr = read_file_bytes(dir.file("g.csr"));
    csr[4] = 99;  // version
    write_file_bytes(dir.file("badver.csr"), csr);
    try {
        ingest(dir.file("badver.csr"), GraphFileFormat::kCsrBin);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("ingest: truncation must be explicit and is reported") {
    test::TempDir dir("truncate");
    write_text(dir.file("g.txt"), "0: 1 2 3\n1: 0\n2: 0\n3: 0\n");

    IngestOptions opts;
    opts.k_cap = 2;
    CHECK_THROWS_AS(ingest(dir.file("g.txt"), GraphFileFormat::kAdjListText, opts),
                    std::invalid_argument);

    opts.allow_truncation = true;
    TruncationReport report;
    const auto g = ingest(dir.file("g.txt"), GraphFileFormat::kAdjListText, opts, &report);
    CHECK(g.degree(0) == 2);
    CHECK(g.row(0)[0] == 1);  // first k_cap entries kept
    CHECK(g.row(0)[1] == 2);
    CHECK(report.truncated_rows == 1);
    CHECK(report.dropped_edges == 1);
}
