#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "annlab/build.hpp"
#include "annlab/dataset.hpp"
#include "annlab/graph.hpp"
#include "annlab/ground_truth.hpp"
#include "annlab/reorder.hpp"
#include "annlab/search.hpp"

namespace annlab {

// The L grid of the evaluation protocol.
inline const std::vector<std::uint32_t> kDefaultLGrid = {20, 25, 30,  35,  40,  45,  50,  60,
                                                         70, 80, 90, 100, 120, 140, 160, 180};

// Mean over queries of |returned top-k intersect true top-k| / k.
double recall_at_k(const std::vector<SearchResult>& results, const GroundTruth& gt,
                   std::uint32_t k);

struct QpsMeasurement {
    double qps = 0.0;
    double qps_std = 0.0;
    std::vector<double> trial_qps;
    double recall = 0.0;
    double mean_latency_ms = 0.0;
    double mean_hops = 0.0;
    double mean_dist_evals = 0.0;
    bool timer_warning = false;  // timer resolution coarser than 1% of elapsed
};

// Wall-clocks the full batch per trial after one mandatory untimed warm-up
// pass. QPS is queries / elapsed seconds, reported as mean and standard
// deviation over trials; recall is computed once (the search output is
// deterministic). result_permutation, when given, maps returned IDs back to
// the ground truth's ID space.
QpsMeasurement measure_qps(const FixedDegreeGraph& g, const VectorDataset& ds,
                           const VectorDataset& queries, const GroundTruth& gt,
                           const SearchParams& params, std::uint32_t trials,
                           const Permutation* result_permutation = nullptr);

struct BenchRecord {
    std::string index_label;
    std::string dataset_label;
    std::string reorder_label;
    std::uint32_t L = 0;
    std::uint32_t k = 0;
    double recall = 0.0;
    double qps = 0.0;
    double qps_std = 0.0;
    double speedup = 0.0;  // vs the unreordered baseline at equal L
    std::uint32_t trials = 0;
    double mean_latency_ms = 0.0;
    double mean_hops = 0.0;
    double mean_dist_evals = 0.0;
    std::vector<double> trial_qps;
    bool timer_warning = false;
};

struct SweepConfig {
    std::string index_label = "index";
    std::string dataset_label = "dataset";
    std::vector<std::uint32_t> L_grid = kDefaultLGrid;
    std::vector<ReorderSpec> reorder_specs;
    std::uint32_t k = 10;
    std::uint32_t trials = 5;
    SearchParams search;  // L is overridden per grid point
    // Recall must not change under reordering when all distances are
    // distinct; the sweep asserts it unless disabled.
    bool assert_recall_invariance = true;
};

struct SweepOutput {
    std::vector<BenchRecord> records;  // baseline first, then per spec
    double avg_lcc = 0.0;              // structural context for the scatter
    double max_speedup = 0.0;
    double avg_speedup = 0.0;
};

// The measurement protocol: search the baseline index over the L grid, then
// each reordered copy (entry points mapped through the permutation), pairing
// speed-ups at equal L.
SweepOutput sweep(const FixedDegreeGraph& g, const VectorDataset& ds,
                  const VectorDataset& queries, const GroundTruth& gt, const SweepConfig& config);

// CSV round-trip for bench records; fixed column order with a header row.
extern const char* const kBenchCsvHeader;
void write_records_csv(const std::filesystem::path& file,
                       const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_records_csv(const std::filesystem::path& file);

// JSON mirror: {"records": [...]}; the reader also accepts any object with
// a "records" array (such as the CLI summary file) or a bare array.
void write_records_json(const std::filesystem::path& file,
                        const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_records_json(const std::filesystem::path& file);

enum class BuilderKind { kExactKnn, kNnDescent, kVamana };
BuilderKind parse_builder(const std::string& s);
const char* builder_name(BuilderKind b);

FixedDegreeGraph build_index(BuilderKind builder, const VectorDataset& ds,
                             const BuildParams& params);

struct DimensionSweepConfig {
    std::vector<std::uint32_t> d_grid = {8, 16, 32, 64, 128, 256, 512, 1024};
    std::uint32_t n = 2000;
    std::uint32_t n_queries = 100;
    std::uint64_t data_seed = 42;
    std::uint64_t query_seed = 43;
    std::vector<BuilderKind> builders = {BuilderKind::kNnDescent};
    BuildParams build;
    std::vector<ReorderSpec> reorder_specs;
    std::vector<std::uint32_t> L_grid = kDefaultLGrid;
    std::uint32_t k = 10;
    std::uint32_t trials = 5;
    SearchParams search;
};

struct DimensionSweepRow {
    std::string builder;
    std::vector<double> max_speedups;  // one per d
    std::vector<double> avg_speedups;
    // Spearman r_s against the d grid; absent when ties degenerate the ranks.
    std::optional<double> rs_max;
    std::optional<double> rs_avg;
};

struct DimensionSweepOutput {
    std::vector<std::uint32_t> d_grid;
    std::vector<DimensionSweepRow> rows;  // one per builder
};

DimensionSweepOutput dimension_sweep(const DimensionSweepConfig& config);

std::string host_info_string();

}  // namespace annlab
