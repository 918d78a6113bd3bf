#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "catlas/corpus.hpp"

namespace testsupport {

struct RandomCorpusParams {
    uint32_t journals = 60;
    uint32_t categories_a = 8;
    uint32_t categories_b = 10;
    uint32_t max_cats_per_journal = 4;
};

// Randomly categorized matched pairs; every journal carries a score on
// both sides. corpus_ids are sequential.
std::vector<catlas::MatchedJournal> random_matches(std::mt19937_64& rng,
                                                   const RandomCorpusParams& params);

// Builds a corpus through the real build path from random_matches.
catlas::Corpus random_corpus(std::mt19937_64& rng, const RandomCorpusParams& params);

// Writes a pair of journal tables (schema: name,issn,eissn,categories,
// score,active) exercising dashes, leading zeros, unmatched rows, inactive
// rows and missing scores. Returns {path_a, path_b}.
std::pair<std::filesystem::path, std::filesystem::path>
write_synthetic_tables(const std::filesystem::path& dir, uint64_t seed,
                       uint32_t journals);

}  // namespace testsupport
