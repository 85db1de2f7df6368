#include "annlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "annlab/adapter.hpp"
#include "annlab/analyzer.hpp"
#include "annlab/bench.hpp"
#include "annlab/build.hpp"
#include "annlab/ground_truth.hpp"
#include "annlab/io.hpp"
#include "annlab/reorder.hpp"
#include "annlab/search.hpp"
#include "annlab/synthetic.hpp"

namespace annlab {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

void write_json_file(const fs::path& path, const json& j) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("failed writing: " + path.string());
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

// Every command records its resolved parameters next to its output.
void write_manifest(const fs::path& out_file, json params) {
    params["host"] = host_info_string();
    fs::path manifest = out_file;
    manifest += ".manifest.json";
    write_json_file(manifest, params);
}

VectorDataset load_dataset(const std::string& path, const std::string& format, Metric metric) {
    if (format == "fvecs") return read_fvecs(path, metric);
    if (format == "raw-bin") return read_raw_bin(path, metric);
    throw std::invalid_argument("unknown dataset format: " + format);
}

struct BuildCmd {
    std::string data, data_format = "fvecs", metric = "l2";
    std::string algo = "nn-descent";
    std::string out;
    BuildParams params;
};

int cmd_build(const BuildCmd& c) {
    const VectorDataset ds = load_dataset(c.data, c.data_format, parse_metric(c.metric));
    const BuilderKind builder = parse_builder(c.algo);
    const FixedDegreeGraph g = build_index(builder, ds, c.params);
    if (fs::path(c.out).has_parent_path()) fs::create_directories(fs::path(c.out).parent_path());
    serialize_graph(g, c.out);
    json manifest{{"command", "build"},
                  {"data", c.data},
                  {"data_format", c.data_format},
                  {"metric", c.metric},
                  {"algo", c.algo},
                  {"k_max", c.params.k_max},
                  {"sample_rate", c.params.sample_rate},
                  {"max_iters", c.params.max_iters},
                  {"convergence_delta", c.params.convergence_delta},
                  {"alpha", c.params.alpha},
                  {"build_beam_width", c.params.build_beam_width},
                  {"seed", c.params.seed},
                  {"out", c.out},
                  {"n", g.n},
                  {"edge_count", g.edge_count()}};
    if (builder == BuilderKind::kVamana) {
        // the designated search entry point for this index
        manifest["medoid"] = find_medoid(ds, c.params.seed);
    }
    write_manifest(c.out, manifest);
    std::cout << "built " << c.algo << " index: n=" << g.n << " k_max=" << g.k_max
              << " edges=" << g.edge_count() << " -> " << c.out << "\n";
    return 0;
}

struct AdaptCmd {
    std::string in, format = "adjlist-text", out;
    std::uint32_t k_cap = 0;
    bool truncate = false;
};

int cmd_adapt(const AdaptCmd& c) {
    IngestOptions opts;
    opts.k_cap = c.k_cap;
    opts.allow_truncation = c.truncate;
    TruncationReport report;
    const FixedDegreeGraph g = ingest(c.in, parse_graph_format(c.format), opts, &report);
    if (fs::path(c.out).has_parent_path()) fs::create_directories(fs::path(c.out).parent_path());
    serialize_graph(g, c.out);
    write_manifest(c.out, json{{"command", "adapt"},
                               {"in", c.in},
                               {"format", c.format},
                               {"k_cap", c.k_cap},
                               {"truncate", c.truncate},
                               {"out", c.out},
                               {"n", g.n},
                               {"k_max", g.k_max},
                               {"edge_count", g.edge_count()},
                               {"truncated_rows", report.truncated_rows},
                               {"dropped_edges", report.dropped_edges}});
    std::cout << "ingested " << c.in << ": n=" << g.n << " k_max=" << g.k_max
              << " edges=" << g.edge_count();
    if (report.dropped_edges > 0) {
        std::cout << " (truncated " << report.dropped_edges << " edges across "
                  << report.truncated_rows << " rows)";
    }
    std::cout << " -> " << c.out << "\n";
    return 0;
}

struct ReorderCmd {
    std::string graph, algo = "identity";
    std::uint32_t window = 10;
    double threshold = -1.0;  // <0: default (mean in-degree)
    std::uint64_t seed = 0;
    std::string out_perm, out_graph, data, data_format = "fvecs", metric = "l2", out_data;
};

int cmd_reorder(const ReorderCmd& c) {
    const FixedDegreeGraph g = read_fixed_bin(c.graph);
    ReorderSpec spec;
    spec.algorithm = parse_reorder_algorithm(c.algo);
    spec.window = c.window;
    if (c.threshold >= 0.0) spec.hub_threshold = c.threshold;
    spec.seed = c.seed;
    const Permutation perm = make_permutation(g, spec);

    if (fs::path(c.out_perm).has_parent_path()) {
        fs::create_directories(fs::path(c.out_perm).parent_path());
    }
    write_perm(c.out_perm, perm);
    if (!c.out_graph.empty()) serialize_graph(apply_permutation(g, perm), c.out_graph);
    if (!c.out_data.empty()) {
        if (c.data.empty()) {
            throw std::invalid_argument("reorder: --out-data requires --data");
        }
        const VectorDataset ds = load_dataset(c.data, c.data_format, parse_metric(c.metric));
        write_fvecs(c.out_data, apply_permutation(ds, perm));
    }
    write_manifest(c.out_perm,
                   json{{"command", "reorder"},
                        {"graph", c.graph},
                        {"algo", spec.label()},
                        {"window", c.window},
                        {"hub_threshold",
                         spec.hub_threshold ? json(*spec.hub_threshold) : json("mean-in-degree")},
                        {"seed", c.seed},
                        {"out_perm", c.out_perm},
                        {"out_graph", c.out_graph},
                        {"out_data", c.out_data}});
    std::cout << "reordered with " << spec.label() << " -> " << c.out_perm << "\n";
    return 0;
}

struct SearchCmd {
    std::string graph, data, data_format = "fvecs", metric = "l2";
    std::string queries, queries_format = "fvecs";
    std::string out;
    SearchParams params;
    std::vector<std::uint32_t> entry;
};

int cmd_search(const SearchCmd& c) {
    const FixedDegreeGraph g = read_fixed_bin(c.graph);
    const Metric metric = parse_metric(c.metric);
    const VectorDataset ds = load_dataset(c.data, c.data_format, metric);
    const VectorDataset queries = load_dataset(c.queries, c.queries_format, metric);

    SearchParams params = c.params;
    if (!c.entry.empty()) {
        params.entry_mode = EntryMode::kFixedSet;
        params.entry_points.assign(c.entry.begin(), c.entry.end());
    }
    const auto results = batch_search(g, ds, queries, params);

    json out_json;
    out_json["n_queries"] = queries.n;
    out_json["L"] = params.L;
    out_json["k"] = params.k;
    json arr = json::array();
    for (const auto& r : results) {
        arr.push_back(json{{"ids", r.ids},
                           {"distances", r.distances},
                           {"hops", r.stats.hops},
                           {"distance_evals", r.stats.distance_evals},
                           {"visited", r.stats.visited}});
    }
    out_json["results"] = arr;
    write_json_file(c.out, out_json);
    write_manifest(c.out, json{{"command", "search"},
                               {"graph", c.graph},
                               {"data", c.data},
                               {"queries", c.queries},
                               {"metric", c.metric},
                               {"L", params.L},
                               {"k", params.k},
                               {"entry_mode",
                                params.entry_mode == EntryMode::kFixedSet ? "fixed-set"
                                                                          : "seeded-random"},
                               {"entry_points", params.entry_points},
                               {"entry_count", params.entry_count},
                               {"seed", params.seed},
                               {"max_iterations", params.effective_max_iterations()},
                               {"out", c.out}});
    std::cout << "searched " << queries.n << " queries (L=" << params.L << ", k=" << params.k
              << ") -> " << c.out << "\n";
    return 0;
}

struct AnalyzeCmd {
    std::string graph, out;
};

int cmd_analyze(const AnalyzeCmd& c) {
    const FixedDegreeGraph g = read_fixed_bin(c.graph);
    const GraphReport report = analyze(g);
    if (fs::path(c.out).has_parent_path()) fs::create_directories(fs::path(c.out).parent_path());
    std::ofstream out(c.out, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + c.out);
    out << report.to_json() << "\n";
    write_manifest(c.out, json{{"command", "analyze"}, {"graph", c.graph}, {"out", c.out}});
    std::cout << "analyzed " << c.graph << ": edges=" << report.edge_count
              << " avg_lcc=" << report.average_lcc << " -> " << c.out << "\n";
    return 0;
}

struct GtCmd {
    std::string data, data_format = "fvecs", metric = "l2";
    std::string queries, queries_format = "fvecs";
    std::uint32_t k = 10;
    std::string out;
};

int cmd_gt(const GtCmd& c) {
    const Metric metric = parse_metric(c.metric);
    const VectorDataset ds = load_dataset(c.data, c.data_format, metric);
    const VectorDataset queries = load_dataset(c.queries, c.queries_format, metric);
    const GroundTruth gt = exact_ground_truth(ds, queries, c.k);

    IntMatrix ids;
    ids.rows = gt.n_queries;
    ids.cols = gt.k;
    ids.data.assign(gt.ids.begin(), gt.ids.end());
    if (fs::path(c.out).has_parent_path()) fs::create_directories(fs::path(c.out).parent_path());
    write_ivecs(c.out, ids);
    write_manifest(c.out, json{{"command", "gt"},
                               {"data", c.data},
                               {"queries", c.queries},
                               {"metric", c.metric},
                               {"k", c.k},
                               {"out", c.out}});
    std::cout << "ground truth for " << queries.n << " queries (k=" << c.k << ") -> " << c.out
              << "\n";
    return 0;
}

// ---- bench -----------------------------------------------------------

ReorderSpec reorder_spec_from_json(const json& j) {
    ReorderSpec spec;
    spec.algorithm = parse_reorder_algorithm(j.at("algo").get<std::string>());
    if (j.contains("window")) spec.window = j["window"].get<std::uint32_t>();
    if (j.contains("threshold")) spec.hub_threshold = j["threshold"].get<double>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    return spec;
}

json reorder_spec_to_json(const ReorderSpec& spec) {
    json j{{"algo", reorder_algorithm_name(spec.algorithm)}};
    if (spec.algorithm == ReorderAlgorithm::kGorder) j["window"] = spec.window;
    if (spec.algorithm == ReorderAlgorithm::kHubSort && spec.hub_threshold) {
        j["threshold"] = *spec.hub_threshold;
    }
    if (spec.algorithm == ReorderAlgorithm::kRandom) j["seed"] = spec.seed;
    return j;
}

BuildParams build_params_from_json(const json& j) {
    BuildParams p;
    if (j.contains("k_max")) p.k_max = j["k_max"].get<std::uint32_t>();
    if (j.contains("sample_rate")) p.sample_rate = j["sample_rate"].get<float>();
    if (j.contains("max_iters")) p.max_iters = j["max_iters"].get<std::uint32_t>();
    if (j.contains("convergence_delta")) {
        p.convergence_delta = j["convergence_delta"].get<double>();
    }
    if (j.contains("alpha")) p.alpha = j["alpha"].get<float>();
    if (j.contains("build_beam_width")) {
        p.build_beam_width = j["build_beam_width"].get<std::uint32_t>();
    }
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    return p;
}

json build_params_to_json(const BuildParams& p) {
    return json{{"k_max", p.k_max},
                {"sample_rate", p.sample_rate},
                {"max_iters", p.max_iters},
                {"convergence_delta", p.convergence_delta},
                {"alpha", p.alpha},
                {"build_beam_width", p.build_beam_width},
                {"seed", p.seed}};
}

SearchParams search_params_from_json(const json& j) {
    SearchParams p;
    if (j.contains("entry_count")) p.entry_count = j["entry_count"].get<std::uint32_t>();
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("max_iterations")) p.max_iterations = j["max_iterations"].get<std::uint32_t>();
    if (j.contains("entry_points")) {
        p.entry_mode = EntryMode::kFixedSet;
        p.entry_points = j["entry_points"].get<std::vector<VertexId>>();
    }
    return p;
}

struct BenchDataset {
    VectorDataset base;
    VectorDataset queries;
    std::string label;
};

BenchDataset bench_dataset_from_json(const json& dj) {
    const std::string source = dj.value("source", "synthetic");
    if (source == "synthetic") {
        SyntheticParams sp;
        sp.n = dj.at("n").get<std::uint32_t>();
        sp.d = dj.at("d").get<std::uint32_t>();
        sp.seed = dj.value("seed", std::uint64_t{42});
        sp.query_seed = dj.value("query_seed", std::uint64_t{43});
        sp.n_queries = dj.at("n_queries").get<std::uint32_t>();
        sp.metric = parse_metric(dj.value("metric", std::string("l2")));
        const std::string dist = dj.value("dist", std::string("uniform"));
        if (dist == "uniform") {
            sp.dist = SyntheticDist::kUniform;
        } else if (dist == "gaussian") {
            sp.dist = SyntheticDist::kGaussian;
        } else {
            throw std::invalid_argument("unknown synthetic distribution: " + dist);
        }
        sp.normalize = dj.value("normalize", false);
        sp.allow_equal_seeds = dj.value("allow_equal_seeds", false);
        SyntheticData data = generate_synthetic(sp);
        return {std::move(data.base), std::move(data.queries),
                "synthetic-n" + std::to_string(sp.n) + "-d" + std::to_string(sp.d)};
    }
    if (source == "files") {
        const Metric metric = parse_metric(dj.value("metric", std::string("l2")));
        VectorDataset base = load_dataset(dj.at("data").get<std::string>(),
                                          dj.value("data_format", std::string("fvecs")), metric);
        VectorDataset queries =
            load_dataset(dj.at("queries").get<std::string>(),
                         dj.value("queries_format", std::string("fvecs")), metric);
        // Declared shape, when present, must match the file contents.
        if (dj.contains("n") && dj["n"].get<std::uint32_t>() != base.n) {
            throw std::invalid_argument("dataset manifest declares n=" +
                                        std::to_string(dj["n"].get<std::uint32_t>()) +
                                        " but file holds " + std::to_string(base.n));
        }
        if (dj.contains("d") && dj["d"].get<std::uint32_t>() != base.d) {
            throw std::invalid_argument("dataset manifest declares d=" +
                                        std::to_string(dj["d"].get<std::uint32_t>()) +
                                        " but file holds " + std::to_string(base.d));
        }
        return {std::move(base), std::move(queries),
                dj.value("label", fs::path(dj.at("data").get<std::string>()).stem().string())};
    }
    throw std::invalid_argument("unknown dataset source: " + source);
}

int bench_sweep(const json& cfg, const fs::path& out_dir) {
    BenchDataset data = bench_dataset_from_json(cfg.at("dataset"));

    const json ij = cfg.value("index", json{{"source", "build"}});
    FixedDegreeGraph g;
    std::string index_label;
    if (ij.value("source", "build") == "file") {
        g = read_fixed_bin(ij.at("path").get<std::string>());
        index_label = ij.value("label", fs::path(ij.at("path").get<std::string>()).stem().string());
    } else {
        const BuilderKind builder = parse_builder(ij.value("builder", std::string("nn-descent")));
        const BuildParams bp = build_params_from_json(ij);
        g = build_index(builder, data.base, bp);
        index_label = builder_name(builder);
    }

    SweepConfig sc;
    sc.index_label = index_label;
    sc.dataset_label = data.label;
    if (cfg.contains("L_grid")) sc.L_grid = cfg["L_grid"].get<std::vector<std::uint32_t>>();
    for (const json& rj : cfg.value("reorder_specs", json::array())) {
        sc.reorder_specs.push_back(reorder_spec_from_json(rj));
    }
    sc.k = cfg.value("k", 10u);
    sc.trials = cfg.value("trials", 5u);
    if (cfg.contains("search")) sc.search = search_params_from_json(cfg["search"]);
    sc.assert_recall_invariance = cfg.value("assert_recall_invariance", true);

    // Ground truth either comes precomputed (ivecs, e.g. from `annlab gt`)
    // or is derived by brute force.
    GroundTruth gt;
    if (cfg.at("dataset").contains("gt")) {
        const IntMatrix m = read_ivecs(cfg["dataset"]["gt"].get<std::string>());
        if (m.rows != data.queries.n) {
            throw std::invalid_argument("ground-truth file holds " + std::to_string(m.rows) +
                                        " rows for " + std::to_string(data.queries.n) +
                                        " queries");
        }
        if (m.cols < sc.k) {
            throw std::invalid_argument("ground-truth file holds fewer than k=" +
                                        std::to_string(sc.k) + " ids per query");
        }
        gt.n_queries = m.rows;
        gt.k = m.cols;
        gt.ids.assign(m.data.begin(), m.data.end());
        gt.distances.assign(gt.ids.size(), 0.0f);
    } else {
        gt = exact_ground_truth(data.base, data.queries, sc.k);
    }
    const SweepOutput out = sweep(g, data.base, data.queries, gt, sc);

    fs::create_directories(out_dir);
    write_records_csv(out_dir / "records.csv", out.records);

    json jout;
    jout["index"] = sc.index_label;
    jout["dataset"] = sc.dataset_label;
    jout["avg_lcc"] = out.avg_lcc;
    jout["max_speedup"] = out.max_speedup;
    jout["avg_speedup"] = out.avg_speedup;
    json recs = json::array();
    for (const auto& r : out.records) {
        recs.push_back(json{{"index", r.index_label},
                            {"dataset", r.dataset_label},
                            {"reorder", r.reorder_label},
                            {"L", r.L},
                            {"k", r.k},
                            {"recall", r.recall},
                            {"qps", r.qps},
                            {"qps_std", r.qps_std},
                            {"speedup", r.speedup},
                            {"trials", r.trials},
                            {"mean_latency_ms", r.mean_latency_ms},
                            {"mean_hops", r.mean_hops},
                            {"mean_dist_evals", r.mean_dist_evals},
                            {"trial_qps", r.trial_qps},
                            {"timer_warning", r.timer_warning}});
    }
    jout["records"] = recs;
    write_json_file(out_dir / "records.json", jout);

    json resolved_specs = json::array();
    for (const auto& spec : sc.reorder_specs) resolved_specs.push_back(reorder_spec_to_json(spec));
    json manifest = cfg;
    manifest["resolved"] = json{{"type", "sweep"},
                                {"index", sc.index_label},
                                {"dataset", sc.dataset_label},
                                {"L_grid", sc.L_grid},
                                {"k", sc.k},
                                {"trials", sc.trials},
                                {"reorder_specs", resolved_specs},
                                {"entry_count", sc.search.entry_count},
                                {"search_seed", sc.search.seed},
                                {"speedup_pairing", "equal-L"},
                                {"host", host_info_string()}};
    write_json_file(out_dir / "manifest.json", manifest);

    std::cout << "sweep complete: " << out.records.size() << " records, avg_lcc=" << out.avg_lcc
              << ", max_speedup=" << out.max_speedup << " -> " << out_dir.string() << "\n";
    return 0;
}

int bench_dimension_sweep(const json& cfg, const fs::path& out_dir) {
    DimensionSweepConfig dc;
    if (cfg.contains("d_grid")) dc.d_grid = cfg["d_grid"].get<std::vector<std::uint32_t>>();
    dc.n = cfg.value("n", 2000u);
    dc.n_queries = cfg.value("n_queries", 100u);
    dc.data_seed = cfg.value("data_seed", std::uint64_t{42});
    dc.query_seed = cfg.value("query_seed", std::uint64_t{43});
    if (cfg.contains("builders")) {
        dc.builders.clear();
        for (const json& b : cfg["builders"]) dc.builders.push_back(parse_builder(b));
    }
    if (cfg.contains("build")) dc.build = build_params_from_json(cfg["build"]);
    if (cfg.contains("reorder_specs")) {
        for (const json& rj : cfg["reorder_specs"]) {
            dc.reorder_specs.push_back(reorder_spec_from_json(rj));
        }
    }
    if (cfg.contains("L_grid")) dc.L_grid = cfg["L_grid"].get<std::vector<std::uint32_t>>();
    dc.k = cfg.value("k", 10u);
    dc.trials = cfg.value("trials", 5u);
    if (cfg.contains("search")) dc.search = search_params_from_json(cfg["search"]);

    const DimensionSweepOutput out = dimension_sweep(dc);

    fs::create_directories(out_dir);
    {
        std::ofstream csv(out_dir / "correlation_table.csv", std::ios::trunc);
        csv << "index,max_speedup_rs,avg_speedup_rs\n";
        for (const auto& row : out.rows) {
            csv << row.builder << ','
                << (row.rs_max ? std::to_string(*row.rs_max) : std::string("degenerate")) << ','
                << (row.rs_avg ? std::to_string(*row.rs_avg) : std::string("degenerate")) << "\n";
        }
    }
    json jout;
    jout["d_grid"] = out.d_grid;
    json rows = json::array();
    for (const auto& row : out.rows) {
        rows.push_back(json{{"index", row.builder},
                            {"max_speedups", row.max_speedups},
                            {"avg_speedups", row.avg_speedups},
                            {"max_speedup_rs", row.rs_max ? json(*row.rs_max) : json()},
                            {"avg_speedup_rs", row.rs_avg ? json(*row.rs_avg) : json()}});
    }
    jout["rows"] = rows;
    write_json_file(out_dir / "correlation_table.json", jout);

    json manifest = cfg;
    manifest["resolved"] = json{{"type", "dimension-sweep"},
                                {"d_grid", dc.d_grid},
                                {"n", dc.n},
                                {"n_queries", dc.n_queries},
                                {"data_seed", dc.data_seed},
                                {"query_seed", dc.query_seed},
                                {"k", dc.k},
                                {"trials", dc.trials},
                                {"build", build_params_to_json(dc.build)},
                                {"host", host_info_string()}};
    write_json_file(out_dir / "manifest.json", manifest);

    std::cout << "dimension sweep complete: " << out.rows.size() << " index rows over "
              << out.d_grid.size() << " dimensionalities -> " << out_dir.string() << "\n";
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir_flag,
              std::optional<std::uint32_t> trials_flag, std::optional<std::uint32_t> k_flag) {
    json cfg = read_json_file(config_path);
    if (!out_dir_flag.empty()) cfg["out_dir"] = out_dir_flag;
    if (trials_flag) cfg["trials"] = *trials_flag;
    if (k_flag) cfg["k"] = *k_flag;
    const fs::path out_dir = cfg.value("out_dir", std::string("bench-out"));
    const std::string type = cfg.value("type", std::string("sweep"));
    if (type == "sweep") return bench_sweep(cfg, out_dir);
    if (type == "dimension-sweep") return bench_dimension_sweep(cfg, out_dir);
    throw std::invalid_argument("unknown bench type: " + type);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"annlab: graph-ANN index layout lab"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = OpenMP default)");

    BuildCmd build_cmd;
    auto* build = app.add_subcommand("build", "build a graph index from vectors");
    build->add_option("--data", build_cmd.data, "input vectors")->required();
    build->add_option("--data-format", build_cmd.data_format, "fvecs | raw-bin");
    build->add_option("--metric", build_cmd.metric, "l2 | ip");
    build->add_option("--algo", build_cmd.algo, "exact-knn | nn-descent | vamana");
    build->add_option("--k", build_cmd.params.k_max, "max out-degree (slots per row)");
    build->add_option("--sample-rate", build_cmd.params.sample_rate, "nn-descent sample rate");
    build->add_option("--max-iters", build_cmd.params.max_iters, "nn-descent iteration cap");
    build->add_option("--delta", build_cmd.params.convergence_delta,
                      "nn-descent convergence threshold");
    build->add_option("--alpha", build_cmd.params.alpha, "vamana pruning slack");
    build->add_option("--build-beam", build_cmd.params.build_beam_width,
                      "vamana build beam width");
    build->add_option("--seed", build_cmd.params.seed, "build seed");
    build->add_option("--out", build_cmd.out, "output graph (fixed-bin)")->required();

    AdaptCmd adapt_cmd;
    auto* adapt = app.add_subcommand("adapt", "ingest an external graph topology");
    adapt->add_option("--in", adapt_cmd.in, "input graph file")->required();
    adapt->add_option("--format", adapt_cmd.format, "adjlist-text | csr-bin | fixed-bin");
    adapt->add_option("--k-cap", adapt_cmd.k_cap, "slots per row (0 = max observed degree)");
    adapt->add_flag("--truncate", adapt_cmd.truncate, "allow dropping edges past k-cap");
    adapt->add_option("--out", adapt_cmd.out, "output graph (fixed-bin)")->required();

    ReorderCmd reorder_cmd;
    auto* reorder = app.add_subcommand("reorder", "compute and apply a vertex permutation");
    reorder->add_option("--graph", reorder_cmd.graph, "input graph (fixed-bin)")->required();
    reorder->add_option("--algo", reorder_cmd.algo,
                        "identity | indegree-sort | outdegree-sort | hub-sort | gorder | rcm | "
                        "random");
    reorder->add_option("--window", reorder_cmd.window, "gorder window size");
    reorder->add_option("--threshold", reorder_cmd.threshold,
                        "hub-sort in-degree threshold (default: mean in-degree)");
    reorder->add_option("--seed", reorder_cmd.seed, "random reorder seed");
    reorder->add_option("--out-perm", reorder_cmd.out_perm, "output permutation file")->required();
    reorder->add_option("--out-graph", reorder_cmd.out_graph, "optional permuted graph output");
    reorder->add_option("--data", reorder_cmd.data, "vectors to permute alongside the graph");
    reorder->add_option("--data-format", reorder_cmd.data_format, "fvecs | raw-bin");
    reorder->add_option("--metric", reorder_cmd.metric, "l2 | ip");
    reorder->add_option("--out-data", reorder_cmd.out_data, "optional permuted vectors (fvecs)");

    SearchCmd search_cmd;
    auto* search = app.add_subcommand("search", "run beam search for a query file");
    search->add_option("--graph", search_cmd.graph, "graph (fixed-bin)")->required();
    search->add_option("--data", search_cmd.data, "database vectors")->required();
    search->add_option("--data-format", search_cmd.data_format, "fvecs | raw-bin");
    search->add_option("--metric", search_cmd.metric, "l2 | ip");
    search->add_option("--queries", search_cmd.queries, "query vectors")->required();
    search->add_option("--queries-format", search_cmd.queries_format, "fvecs | raw-bin");
    search->add_option("--L", search_cmd.params.L, "candidate pool capacity");
    search->add_option("--k", search_cmd.params.k, "results per query");
    search->add_option("--entry", search_cmd.entry, "fixed entry vertex IDs");
    search->add_option("--entry-count", search_cmd.params.entry_count,
                       "seeded-random entry count");
    search->add_option("--seed", search_cmd.params.seed, "entry seed");
    search->add_option("--max-iterations", search_cmd.params.max_iterations,
                       "expansion cap (0 = 10*L)");
    search->add_option("--out", search_cmd.out, "results JSON")->required();

    AnalyzeCmd analyze_cmd;
    auto* analyze_sub = app.add_subcommand("analyze", "structural report for a graph");
    analyze_sub->add_option("--graph", analyze_cmd.graph, "graph (fixed-bin)")->required();
    analyze_sub->add_option("--out", analyze_cmd.out, "report JSON")->required();

    GtCmd gt_cmd;
    auto* gt = app.add_subcommand("gt", "exact ground truth for a query file");
    gt->add_option("--data", gt_cmd.data, "database vectors")->required();
    gt->add_option("--data-format", gt_cmd.data_format, "fvecs | raw-bin");
    gt->add_option("--metric", gt_cmd.metric, "l2 | ip");
    gt->add_option("--queries", gt_cmd.queries, "query vectors")->required();
    gt->add_option("--queries-format", gt_cmd.queries_format, "fvecs | raw-bin");
    gt->add_option("--k", gt_cmd.k, "neighbors per query");
    gt->add_option("--out", gt_cmd.out, "output ivecs")->required();

    std::string bench_config, bench_out_dir;
    std::optional<std::uint32_t> bench_trials, bench_k;
    auto* bench = app.add_subcommand("bench", "run a measurement sweep from a config file");
    bench->add_option("--config", bench_config, "run config JSON")->required();
    bench->add_option("--out-dir", bench_out_dir, "output directory (overrides config)");
    bench->add_option("--trials", bench_trials, "trials per configuration (overrides config)");
    bench->add_option("--k", bench_k, "recall k (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    }

    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (build->parsed()) return cmd_build(build_cmd);
        if (adapt->parsed()) return cmd_adapt(adapt_cmd);
        if (reorder->parsed()) return cmd_reorder(reorder_cmd);
        if (search->parsed()) return cmd_search(search_cmd);
        if (analyze_sub->parsed()) return cmd_analyze(analyze_cmd);
        if (gt->parsed()) return cmd_gt(gt_cmd);
        if (bench->parsed()) return cmd_bench(bench_config, bench_out_dir, bench_trials, bench_k);
    } catch (const FormatError& e) {
        std::cerr << "error: format: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid-argument: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: invalid-argument: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 5;
    }
    return 1;
}

}  // namespace annlab
