#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catlas/corpus.hpp"

namespace catlas {

struct RunConfig {
    std::filesystem::path input_a;
    std::filesystem::path input_b;
    std::filesystem::path out_dir;
    std::string label_a = "A";
    std::string label_b = "B";
    std::vector<double> thresholds{1.0, 0.95, 0.90};
    unsigned sweep_step = 5;
    unsigned bin_width = 15;
    uint64_t exact_cap = 25;
    uint64_t node_budget = 2'000'000;
    uint64_t small_cutoff = 10;
    uint64_t large_cutoff = 350;
    uint64_t seed = 0;
};

// Bins [0,w), [w,2w), ... with trailing empty bins omitted; interior empty
// bins are kept so counts always sum to the input size.
std::vector<std::pair<uint64_t, uint64_t>> histogram(std::span<const uint64_t> values,
                                                     uint64_t bin_width);

struct SizeExtremes {
    std::vector<std::pair<std::string, uint64_t>> small;  // size < small_cutoff
    std::vector<std::pair<std::string, uint64_t>> large;  // size > large_cutoff
};

SizeExtremes size_extremes(std::span<const Category> categories,
                           uint64_t small_cutoff, uint64_t large_cutoff);

// One output file, rendered in memory; nothing touches the disk until
// write_artifacts.
struct Artifact {
    std::string filename;
    std::string content;
};

struct PipelineData {
    IngestResult raw_a, raw_b;
    std::vector<MatchedJournal> matches;
    MatchDiagnostics match_diag;
    Corpus corpus;
};

// Reads and validates both tables, matches, builds the corpus. Throws
// before anything is written.
PipelineData ingest_inputs(const RunConfig& config);

std::vector<Artifact> ingest_artifacts(const PipelineData& data, const RunConfig& config);
std::vector<Artifact> stats_artifacts(const Corpus& corpus, const RunConfig& config);
std::vector<Artifact> relation_artifacts(const Corpus& corpus);
std::vector<Artifact> sweep_artifacts(const Corpus& corpus, const RunConfig& config);
std::vector<Artifact> cover_artifacts(const Corpus& corpus, const RunConfig& config);

// Provenance record: config echo (out_dir excluded so bundles stay
// byte-identical across output locations), ingest/match/build diagnostics
// and the list of files produced.
Artifact run_summary_artifact(const PipelineData& data, const RunConfig& config,
                              std::string_view command,
                              std::span<const Artifact> artifacts);

void write_artifacts(const std::filesystem::path& out_dir,
                     std::span<const Artifact> artifacts);

struct ReportBundle {
    std::vector<Artifact> artifacts;
};

// Full pipeline: ingest, stats, relations, sweeps, covers, summary. All
// files land in config.out_dir only after every stage succeeded.
ReportBundle run_pipeline(const RunConfig& config);

}  // namespace catlas
