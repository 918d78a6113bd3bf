#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "catlas/bitvec.hpp"
#include "catlas/corpus.hpp"

namespace catlas {

struct CoverCandidate {
    std::string name;
    const BitVec* members = nullptr;  // non-owning
};

// A cover problem: choose the fewest candidates whose union reaches
// required = ceil(threshold * |target|) target members. In intra mode the
// caller must exclude the target's own category from the candidates.
struct CoverInstance {
    BitVec target;
    std::vector<CoverCandidate> candidates;
    double threshold = 1.0;
};

// Smallest k with k >= threshold * |target|, at least 1, robust to the
// binary representation of thresholds like 0.95.
uint64_t required_count(uint64_t target_size, double threshold);

enum class CoverMethod { greedy, exact };

std::string_view to_string(CoverMethod m);

struct CoverResult {
    std::vector<std::string> chosen;  // candidate names, pick order
    uint64_t covered = 0;             // target members covered by chosen
    uint64_t target_size = 0;
    uint64_t required = 0;
    bool feasible = false;
    bool optimal = false;
    CoverMethod method = CoverMethod::greedy;
};

struct GreedyOptions {
    bool prune = true;
};

// Repeatedly picks the candidate adding the most uncovered target members
// (ties: lexicographically smallest name), then drops redundant picks in
// reverse insertion order. Infeasible instances report the maximum
// achievable coverage with feasible = false.
CoverResult greedy_cover(const CoverInstance& instance, GreedyOptions opts = {});

inline constexpr uint64_t kDefaultNodeBudget = 2'000'000;

// Branch and bound over candidate inclusion, seeded with the greedy result
// as the incumbent. Returns optimal = true unless the node budget runs out,
// in which case the greedy result is returned unchanged.
CoverResult exact_cover(const CoverInstance& instance,
                        uint64_t node_budget = kDefaultNodeBudget);

enum class SurveyMode { intra_a, intra_b, a_by_b, b_by_a };
enum class CoverDirection { a_by_b, b_by_a };

std::string_view to_string(SurveyMode m);
std::string_view to_string(CoverDirection d);

struct CoverOptions {
    // Instances with at most this many intersecting candidates are solved
    // exactly; larger ones greedily.
    uint64_t exact_cap = 25;
    uint64_t node_budget = kDefaultNodeBudget;
};

// One result per category of the surveyed system, name order. Candidates
// are the other categories of the same system (intra modes) or every
// category of the other system (inter modes).
std::vector<std::pair<std::string, CoverResult>>
cover_survey(const Corpus& corpus, SurveyMode mode, double threshold,
             const CoverOptions& opts = {});

// Covers the whole corpus (every matched journal) with the categories of
// the covering system named by the direction.
CoverResult meta_cover(const Corpus& corpus, CoverDirection direction,
                       double threshold, const CoverOptions& opts = {});

}  // namespace catlas
