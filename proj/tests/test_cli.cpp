#include <doctest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "annlab/adapter.hpp"
#include "annlab/bench.hpp"
#include "annlab/cli.hpp"
#include "annlab/io.hpp"
#include "annlab/synthetic.hpp"
#include "test_util.hpp"

using namespace annlab;
using json = nlohmann::json;

namespace {

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("annlab");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

}  // namespace

TEST_CASE("cli: gt then search with L=n recovers the ground truth") {
    test::TempDir dir("cli-pipeline");
    const auto data = [] {
        SyntheticParams p;
        p.n = 120;
        p.d = 6;
        p.n_queries = 10;
        return generate_synthetic(p);
    }();
    write_fvecs(dir.file("base.fvecs"), data.base);
    write_fvecs(dir.file("q.fvecs"), data.queries);

    CHECK(run({"gt", "--data", dir.file("base.fvecs"), "--queries", dir.file("q.fvecs"), "--k",
               "5", "--out", dir.file("gt.ivecs")}) == 0);
    CHECK(run({"build", "--data", dir.file("base.fvecs"), "--algo", "exact-knn", "--k", "8",
               "--out", dir.file("g.fdg")}) == 0);
    CHECK(run({"search", "--graph", dir.file("g.fdg"), "--data", dir.file("base.fvecs"),
               "--queries", dir.file("q.fvecs"), "--L", "120", "--k", "5", "--out",
               dir.file("res.json")}) == 0);

    const auto gt = read_ivecs(dir.file("gt.ivecs"));
    const auto res = read_json(dir.file("res.json"));
    REQUIRE(res["results"].size() == 10);
    for (std::uint32_t q = 0; q < 10; ++q) {
        const auto ids = res["results"][q]["ids"].get<std::vector<std::int32_t>>();
        CHECK(ids == std::vector<std::int32_t>(gt.row(q), gt.row(q) + 5));
    }
}

TEST_CASE("cli: identity reorder preserves the edge set") {
    test::TempDir dir("cli-reorder");
    const auto g = test::random_graph(50, 5, 3);
    serialize_graph(g, dir.file("g.fdg"));

    CHECK(run({"reorder", "--graph", dir.file("g.fdg"), "--algo", "identity", "--out-perm",
               dir.file("id.perm"), "--out-graph", dir.file("gp.fdg")}) == 0);
    const auto gp = read_fixed_bin(dir.file("gp.fdg"));
    CHECK(test::edge_set(gp) == test::edge_set(g));

    // rerun reproduces the permutation file byte for byte
    CHECK(run({"reorder", "--graph", dir.file("g.fdg"), "--algo", "identity", "--out-perm",
               dir.file("id2.perm")}) == 0);
    CHECK(read_file_bytes(dir.file("id.perm")) == read_file_bytes(dir.file("id2.perm")));
}

TEST_CASE("cli: adapt ingests text adjacency lists") {
    test::TempDir dir("cli-adapt");
    {
        const std::string text = "0: 1 2\n1: 0\n2: 0\n";
        write_file_bytes(dir.file("g.txt"), std::vector<std::uint8_t>(text.begin(), text.end()));
    }
    CHECK(run({"adapt", "--in", dir.file("g.txt"), "--format", "adjlist-text", "--k-cap", "4",
               "--out", dir.file("g.fdg")}) == 0);
    const auto g = read_fixed_bin(dir.file("g.fdg"));
    CHECK(g.n == 3);
    CHECK(g.degree(0) == 2);

    // manifest written next to the output
    const auto manifest = read_json(dir.file("g.fdg") + ".manifest.json");
    CHECK(manifest["command"] == "adapt");
    CHECK(manifest["k_cap"] == 4);
}

TEST_CASE("cli: analyze emits a report") {
    test::TempDir dir("cli-analyze");
    serialize_graph(test::random_graph(40, 4, 9), dir.file("g.fdg"));
    CHECK(run({"analyze", "--graph", dir.file("g.fdg"), "--out", dir.file("report.json")}) == 0);
    const auto report = read_json(dir.file("report.json"));
    CHECK(report["n"] == 40);
    CHECK(report.contains("average_lcc"));
    CHECK(report.contains("lcc_histogram"));
}

TEST_CASE("cli: bench sweep produces the configured record count") {
    test::TempDir dir("cli-bench");
    const json config = {
        {"type", "sweep"},
        {"dataset",
         {{"source", "synthetic"}, {"n", 300}, {"d", 8}, {"seed", 42}, {"query_seed", 43},
          {"n_queries", 40}}},
        {"index", {{"source", "build"}, {"builder", "exact-knn"}, {"k_max", 8}}},
        {"reorder_specs", json::array({{{"algo", "identity"}}, {{"algo", "rcm"}}})},
        {"L_grid", {10, 20}},
        {"k", 5},
        {"trials", 2},
        {"out_dir", dir.file("out")},
    };
    std::ofstream(dir.file("cfg.json")) << config.dump(2);

    CHECK(run({"bench", "--config", dir.file("cfg.json")}) == 0);
    const auto records = read_records_csv(dir.file("out") + "/records.csv");
    CHECK(records.size() == 2 * (2 + 1));  // |L_grid| x (|specs| + 1)

    const auto summary = read_json(dir.file("out") + "/records.json");
    CHECK(summary.contains("avg_lcc"));
    CHECK(summary.contains("max_speedup"));

    // the JSON mirror parses back into the same records
    const auto json_records = read_records_json(dir.file("out") + "/records.json");
    CHECK(json_records.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(json_records[i].recall == records[i].recall);
        CHECK(json_records[i].qps == records[i].qps);
    }

    // the manifest is a valid config: re-running from it must succeed
    CHECK(run({"bench", "--config", dir.file("out") + "/manifest.json", "--out-dir",
               dir.file("out2")}) == 0);
    const auto rerun = read_records_csv(dir.file("out2") + "/records.csv");
    CHECK(rerun.size() == records.size());
}

TEST_CASE("cli: bench file datasets validate declared shape") {
    test::TempDir dir("cli-declared");
    const auto data = generate_synthetic_dataset(30, 4, 5);
    write_fvecs(dir.file("base.fvecs"), data);
    write_fvecs(dir.file("q.fvecs"), generate_synthetic_dataset(5, 4, 6));

    json config = {
        {"type", "sweep"},
        {"dataset",
         {{"source", "files"}, {"data", dir.file("base.fvecs")},
          {"queries", dir.file("q.fvecs")}, {"n", 31}}},  // wrong n
        {"index", {{"source", "build"}, {"builder", "exact-knn"}, {"k_max", 4}}},
        {"L_grid", {8}},
        {"k", 4},
        {"trials", 1},
        {"out_dir", dir.file("out")},
    };
    std::ofstream(dir.file("bad.json")) << config.dump(2);
    CHECK(run({"bench", "--config", dir.file("bad.json")}) == 2);

    config["dataset"]["n"] = 30;
    config["dataset"]["d"] = 4;
    std::ofstream(dir.file("good.json")) << config.dump(2);
    CHECK(run({"bench", "--config", dir.file("good.json")}) == 0);

    // precomputed ground truth produces the same recall column
    CHECK(run({"gt", "--data", dir.file("base.fvecs"), "--queries", dir.file("q.fvecs"), "--k",
               "4", "--out", dir.file("gt.ivecs")}) == 0);
    config["dataset"]["gt"] = dir.file("gt.ivecs");
    config["out_dir"] = dir.file("out-gt");
    std::ofstream(dir.file("with-gt.json")) << config.dump(2);
    CHECK(run({"bench", "--config", dir.file("with-gt.json")}) == 0);
    const auto computed = read_records_csv(dir.file("out") + "/records.csv");
    const auto loaded = read_records_csv(dir.file("out-gt") + "/records.csv");
    REQUIRE(computed.size() == loaded.size());
    for (std::size_t i = 0; i < computed.size(); ++i) {
        CHECK(computed[i].recall == loaded[i].recall);
    }
}

TEST_CASE("cli: distinct exit codes per failure class") {
    test::TempDir dir("cli-errors");

    // unknown flag -> 1
    CHECK(run({"gt", "--no-such-flag"}) == 1);

    // missing file -> io error 4
    CHECK(run({"analyze", "--graph", dir.file("missing.fdg"), "--out", dir.file("r.json")}) == 4);

    // corrupted graph header -> format error 3
    write_file_bytes(dir.file("bad.fdg"), {'X', 'X', 'X', 'X', 0, 0, 0, 0});
    CHECK(run({"analyze", "--graph", dir.file("bad.fdg"), "--out", dir.file("r.json")}) == 3);

    // malformed config -> 2
    std::ofstream(dir.file("bad.json")) << "{ not json";
    CHECK(run({"bench", "--config", dir.file("bad.json")}) == 2);

    // contract violation (k > n) -> 2
    const auto data = generate_synthetic_dataset(5, 2, 1);
    write_fvecs(dir.file("tiny.fvecs"), data);
    CHECK(run({"gt", "--data", dir.file("tiny.fvecs"), "--queries", dir.file("tiny.fvecs"),
               "--k", "10", "--out", dir.file("gt.ivecs")}) == 2);
}
