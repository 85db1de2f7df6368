#include "annlab/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <sys/utsname.h>

#include <nlohmann/json.hpp>

#include "annlab/analyzer.hpp"
#include "annlab/synthetic.hpp"

namespace annlab {

double recall_at_k(const std::vector<SearchResult>& results, const GroundTruth& gt,
                   std::uint32_t k) {
    if (results.size() != gt.n_queries) {
        throw std::invalid_argument("recall_at_k: result/ground-truth count mismatch");
    }
    if (k > gt.k) throw std::invalid_argument("recall_at_k: ground truth holds fewer than k ids");
    double total = 0.0;
    for (std::uint32_t q = 0; q < gt.n_queries; ++q) {
        if (results[q].ids.size() < k) {
            throw std::invalid_argument("recall_at_k: result " + std::to_string(q) +
                                        " holds fewer than k ids");
        }
        const VertexId* truth = gt.row(q);
        std::uint32_t hits = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            const VertexId id = results[q].ids[i];
            for (std::uint32_t j = 0; j < k; ++j) {
                if (truth[j] == id) {
                    ++hits;
                    break;
                }
            }
        }
        total += static_cast<double>(hits) / k;
    }
    return total / gt.n_queries;
}

namespace {

using Clock = std::chrono::steady_clock;

// Smallest positive tick observable from the clock, measured once.
double timer_resolution_seconds() {
    double best = 1.0;
    for (int i = 0; i < 16; ++i) {
        const auto t0 = Clock::now();
        auto t1 = Clock::now();
        while (t1 == t0) t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

double std_dev(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / (xs.size() - 1));
}

}  // namespace

QpsMeasurement measure_qps(const FixedDegreeGraph& g, const VectorDataset& ds,
                           const VectorDataset& queries, const GroundTruth& gt,
                           const SearchParams& params, std::uint32_t trials,
                           const Permutation* result_permutation) {
    if (trials < 1) throw std::invalid_argument("measure_qps: trials must be >= 1");

    // Warm-up pass, untimed: first-touch effects must not contaminate the
    // layout comparison, which is the one effect under study.
    std::vector<SearchResult> results = batch_search(g, ds, queries, params);

    QpsMeasurement m;
    m.trial_qps.reserve(trials);
    const double resolution = timer_resolution_seconds();
    for (std::uint32_t t = 0; t < trials; ++t) {
        const auto start = Clock::now();
        results = batch_search(g, ds, queries, params);
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (resolution > 0.01 * elapsed) m.timer_warning = true;
        m.trial_qps.push_back(static_cast<double>(queries.n) / elapsed);
    }
    m.qps = pairwise_sum(m.trial_qps) / trials;
    m.qps_std = std_dev(m.trial_qps, m.qps);
    m.mean_latency_ms = 1000.0 / m.qps;

    double hops = 0.0, evals = 0.0;
    for (const auto& r : results) {
        hops += r.stats.hops;
        evals += static_cast<double>(r.stats.distance_evals);
    }
    m.mean_hops = hops / results.size();
    m.mean_dist_evals = evals / results.size();

    if (result_permutation) {
        for (auto& r : results) {
            for (auto& id : r.ids) id = result_permutation->inverse[id];
        }
    }
    m.recall = recall_at_k(results, gt, std::min(params.k, gt.k));
    return m;
}

namespace {

BenchRecord make_record(const SweepConfig& config, const std::string& reorder_label,
                        std::uint32_t L, const QpsMeasurement& m, double baseline_qps) {
    BenchRecord r;
    r.index_label = config.index_label;
    r.dataset_label = config.dataset_label;
    r.reorder_label = reorder_label;
    r.L = L;
    r.k = config.k;
    r.recall = m.recall;
    r.qps = m.qps;
    r.qps_std = m.qps_std;
    r.speedup = baseline_qps > 0.0 ? m.qps / baseline_qps : 0.0;
    r.trials = config.trials;
    r.mean_latency_ms = m.mean_latency_ms;
    r.mean_hops = m.mean_hops;
    r.mean_dist_evals = m.mean_dist_evals;
    r.trial_qps = m.trial_qps;
    r.timer_warning = m.timer_warning;
    return r;
}

}  // namespace

SweepOutput sweep(const FixedDegreeGraph& g, const VectorDataset& ds,
                  const VectorDataset& queries, const GroundTruth& gt,
                  const SweepConfig& config) {
    if (config.L_grid.empty()) throw std::invalid_argument("sweep: empty L grid");

    SweepOutput out;
    out.avg_lcc = average_lcc(g);

    // Entry points materialize once in the original ID space; reordered runs
    // see the same vertices through the permutation, which pins recall.
    const std::vector<VertexId> base_entries = resolve_entry_points(config.search, g.n);

    SearchParams params = config.search;
    params.k = config.k;
    params.entry_mode = EntryMode::kFixedSet;
    params.entry_points = base_entries;

    std::vector<double> baseline_qps(config.L_grid.size());
    std::vector<double> baseline_recall(config.L_grid.size());
    for (std::size_t li = 0; li < config.L_grid.size(); ++li) {
        params.L = config.L_grid[li];
        const QpsMeasurement m = measure_qps(g, ds, queries, gt, params, config.trials);
        baseline_qps[li] = m.qps;
        baseline_recall[li] = m.recall;
        out.records.push_back(make_record(config, "baseline", params.L, m, m.qps));
    }

    std::vector<double> spec_speedups;
    for (const ReorderSpec& spec : config.reorder_specs) {
        const Permutation perm = make_permutation(g, spec);
        const auto [gp, dsp] = apply_permutation(g, ds, perm);

        SearchParams reordered = params;
        reordered.entry_points.clear();
        for (VertexId e : base_entries) reordered.entry_points.push_back(perm.forward[e]);

        for (std::size_t li = 0; li < config.L_grid.size(); ++li) {
            reordered.L = config.L_grid[li];
            const QpsMeasurement m =
                measure_qps(gp, dsp, queries, gt, reordered, config.trials, &perm);
            if (config.assert_recall_invariance && m.recall != baseline_recall[li]) {
                throw std::runtime_error(
                    "sweep: recall changed under reordering (" + spec.label() + ", L=" +
                    std::to_string(reordered.L) + "): " + std::to_string(baseline_recall[li]) +
                    " vs " + std::to_string(m.recall));
            }
            out.records.push_back(
                make_record(config, spec.label(), reordered.L, m, baseline_qps[li]));
            spec_speedups.push_back(out.records.back().speedup);
        }
    }

    if (!spec_speedups.empty()) {
        out.max_speedup = *std::max_element(spec_speedups.begin(), spec_speedups.end());
        out.avg_speedup = pairwise_sum(spec_speedups) / spec_speedups.size();
    }
    return out;
}

const char* const kBenchCsvHeader =
    "index,dataset,reorder,L,k,recall,qps,qps_std,speedup,trials,"
    "mean_latency_ms,mean_hops,mean_dist_evals,timer_warning,trial_qps";

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_records_csv(const std::filesystem::path& file,
                       const std::vector<BenchRecord>& records) {
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
    out << kBenchCsvHeader << "\n";
    for (const auto& r : records) {
        out << r.index_label << ',' << r.dataset_label << ',' << r.reorder_label << ',' << r.L
            << ',' << r.k << ',' << format_double(r.recall) << ',' << format_double(r.qps) << ','
            << format_double(r.qps_std) << ',' << format_double(r.speedup) << ',' << r.trials
            << ',' << format_double(r.mean_latency_ms) << ',' << format_double(r.mean_hops) << ','
            << format_double(r.mean_dist_evals) << ',' << (r.timer_warning ? 1 : 0) << ',';
        for (std::size_t i = 0; i < r.trial_qps.size(); ++i) {
            if (i) out << ';';
            out << format_double(r.trial_qps[i]);
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("failed writing: " + file.string());
}

std::vector<BenchRecord> read_records_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open: " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
    if (line != kBenchCsvHeader) throw std::runtime_error("csv: unexpected header: " + line);

    std::vector<BenchRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() == 14) cells.emplace_back();  // empty trial list
        if (cells.size() != 15) throw std::runtime_error("csv: malformed row: " + line);
        BenchRecord r;
        r.index_label = cells[0];
        r.dataset_label = cells[1];
        r.reorder_label = cells[2];
        r.L = static_cast<std::uint32_t>(std::stoul(cells[3]));
        r.k = static_cast<std::uint32_t>(std::stoul(cells[4]));
        r.recall = std::stod(cells[5]);
        r.qps = std::stod(cells[6]);
        r.qps_std = std::stod(cells[7]);
        r.speedup = std::stod(cells[8]);
        r.trials = static_cast<std::uint32_t>(std::stoul(cells[9]));
        r.mean_latency_ms = std::stod(cells[10]);
        r.mean_hops = std::stod(cells[11]);
        r.mean_dist_evals = std::stod(cells[12]);
        r.timer_warning = cells[13] == "1";
        if (!cells[14].empty()) {
            std::stringstream ts(cells[14]);
            std::string item;
            while (std::getline(ts, item, ';')) r.trial_qps.push_back(std::stod(item));
        }
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

nlohmann::ordered_json record_to_json(const BenchRecord& r) {
    return nlohmann::ordered_json{{"index", r.index_label},
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
                                  {"timer_warning", r.timer_warning},
                                  {"trial_qps", r.trial_qps}};
}

BenchRecord record_from_json(const nlohmann::json& j) {
    BenchRecord r;
    r.index_label = j.at("index").get<std::string>();
    r.dataset_label = j.at("dataset").get<std::string>();
    r.reorder_label = j.at("reorder").get<std::string>();
    r.L = j.at("L").get<std::uint32_t>();
    r.k = j.at("k").get<std::uint32_t>();
    r.recall = j.at("recall").get<double>();
    r.qps = j.at("qps").get<double>();
    r.qps_std = j.at("qps_std").get<double>();
    r.speedup = j.at("speedup").get<double>();
    r.trials = j.at("trials").get<std::uint32_t>();
    r.mean_latency_ms = j.at("mean_latency_ms").get<double>();
    r.mean_hops = j.at("mean_hops").get<double>();
    r.mean_dist_evals = j.at("mean_dist_evals").get<double>();
    r.timer_warning = j.at("timer_warning").get<bool>();
    r.trial_qps = j.at("trial_qps").get<std::vector<double>>();
    return r;
}

}  // namespace

void write_records_json(const std::filesystem::path& file,
                        const std::vector<BenchRecord>& records) {
    nlohmann::ordered_json j;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) j["records"].push_back(record_to_json(r));
    std::ofstream out(file, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("failed writing: " + file.string());
}

std::vector<BenchRecord> read_records_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open: " + file.string());
    nlohmann::json j;
    in >> j;
    const nlohmann::json& arr = j.is_array() ? j : j.at("records");
    std::vector<BenchRecord> records;
    for (const auto& rj : arr) records.push_back(record_from_json(rj));
    return records;
}

BuilderKind parse_builder(const std::string& s) {
    if (s == "exact-knn" || s == "exact") return BuilderKind::kExactKnn;
    if (s == "nn-descent" || s == "nndescent") return BuilderKind::kNnDescent;
    if (s == "vamana") return BuilderKind::kVamana;
    throw std::invalid_argument("unknown builder: " + s);
}

const char* builder_name(BuilderKind b) {
    switch (b) {
        case BuilderKind::kExactKnn: return "exact-knn";
        case BuilderKind::kNnDescent: return "nn-descent";
        case BuilderKind::kVamana: return "vamana";
    }
    return "?";
}

FixedDegreeGraph build_index(BuilderKind builder, const VectorDataset& ds,
                             const BuildParams& params) {
    switch (builder) {
        case BuilderKind::kExactKnn: return build_exact_knn(ds, params.k_max);
        case BuilderKind::kNnDescent: return build_nn_descent(ds, params);
        case BuilderKind::kVamana: return build_vamana(ds, params);
    }
    throw std::invalid_argument("build_index: bad builder");
}

DimensionSweepOutput dimension_sweep(const DimensionSweepConfig& config) {
    if (config.d_grid.empty()) throw std::invalid_argument("dimension_sweep: empty d grid");

    DimensionSweepOutput out;
    out.d_grid = config.d_grid;
    for (BuilderKind builder : config.builders) {
        DimensionSweepRow row;
        row.builder = builder_name(builder);
        for (std::uint32_t d : config.d_grid) {
            SyntheticParams sp;
            sp.n = config.n;
            sp.d = d;
            sp.seed = config.data_seed;
            sp.query_seed = config.query_seed;
            sp.n_queries = config.n_queries;
            const SyntheticData data = generate_synthetic(sp);

            const FixedDegreeGraph g = build_index(builder, data.base, config.build);
            const GroundTruth gt = exact_ground_truth(data.base, data.queries, config.k);

            SweepConfig sc;
            sc.index_label = row.builder;
            sc.dataset_label = "synthetic-d" + std::to_string(d);
            sc.L_grid = config.L_grid;
            sc.reorder_specs = config.reorder_specs;
            sc.k = config.k;
            sc.trials = config.trials;
            sc.search = config.search;
            const SweepOutput so = sweep(g, data.base, data.queries, gt, sc);
            row.max_speedups.push_back(so.max_speedup);
            row.avg_speedups.push_back(so.avg_speedup);
        }

        std::vector<double> ds_as_double(config.d_grid.begin(), config.d_grid.end());
        try {
            row.rs_max = spearman_rank_correlation(ds_as_double, row.max_speedups);
        } catch (const std::domain_error&) {
            row.rs_max = std::nullopt;  // tie-degenerate
        }
        try {
            row.rs_avg = spearman_rank_correlation(ds_as_double, row.avg_speedups);
        } catch (const std::domain_error&) {
            row.rs_avg = std::nullopt;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string host_info_string() {
    struct utsname uts{};
    std::string info;
    if (uname(&uts) == 0) {
        info = std::string(uts.sysname) + " " + uts.release + " " + uts.machine;
    } else {
        info = "unknown";
    }
    info += ", " + std::to_string(std::thread::hardware_concurrency()) + " hw threads";
#if defined(__GNUC__) && !defined(__clang__)
    info += ", gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__);
#elif defined(__clang__)
    info += ", clang " + std::to_string(__clang_major__) + "." + std::to_string(__clang_minor__);
#endif
    return info;
}

}  // namespace annlab
