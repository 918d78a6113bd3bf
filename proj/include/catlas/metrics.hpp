#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "catlas/corpus.hpp"

namespace catlas {

struct PercentileRanking {
    uint32_t journal = 0;  // corpus_id
    double percentile = 0.0;
};

// Percentile of each member within the category, ranked by descending
// score with tie-averaged ranks: (N - R + 0.5) / N * 100. Never attains 0
// or 100; a single member sits at 50. `scores` is indexed by corpus_id.
std::vector<PercentileRanking> percentile_ranks(const Category& category,
                                                std::span<const double> scores);

struct RankDispersion {
    uint32_t journal = 0;
    uint32_t category_count = 0;
    double mm = 0.0;    // max - min of the journal's percentiles
    double var = 0.0;   // population variance over its categories
    double mean_percentile = 0.0;
};

RankDispersion dispersion(uint32_t journal, std::span<const double> percentiles);

// One row per corpus journal, ordered by corpus_id, for the given system.
std::vector<RankDispersion> dispersion_table(const Corpus& corpus,
                                             std::string_view system);

struct ScoreBucketStats {
    uint32_t category_count = 0;
    size_t n = 0;
    double max = 0, min = 0, q1 = 0, median = 0, q3 = 0, mean = 0, sd = 0;
};

// Raw-score statistics of journals grouped by how many categories of this
// system they belong to. Ordered by category_count.
std::vector<ScoreBucketStats> score_buckets(const Corpus& corpus,
                                            std::string_view system);

struct Correlation {
    double r = 0.0;
    double p = 1.0;
};

// Sample correlation with a two-sided p from the t distribution with n-2
// degrees of freedom. Throws DegenerateStatError on a constant vector.
Correlation pearson(std::span<const double> x, std::span<const double> y);

struct WilcoxonResult {
    double statistic = 0.0;  // min(W+, W-)
    double p = 1.0;          // two-sided, tie- and continuity-corrected normal
    size_t n = 0;            // non-zero differences used
};

// Signed-rank test on paired integer observations. Zero differences are
// dropped; throws DegenerateStatError when none remain.
WilcoxonResult wilcoxon_signed_rank(std::span<const std::pair<long, long>> pairs);

}  // namespace catlas
