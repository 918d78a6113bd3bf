#include "catlas/cover.hpp"

#include <algorithm>
#include <cmath>

#include "catlas/errors.hpp"

namespace catlas {

uint64_t required_count(uint64_t target_size, double threshold) {
    if (threshold <= 0.0 || threshold > 1.0)
        throw Error("cover threshold must lie in (0, 1]");
    // Nudge below the exact product so 0.95 * 20 does not round to 20.
    const double product = threshold * static_cast<double>(target_size);
    auto required = static_cast<uint64_t>(std::ceil(product - 1e-9));
    required = std::min(required, target_size);
    return std::max<uint64_t>(required, 1);
}

std::string_view to_string(CoverMethod m) {
    return m == CoverMethod::greedy ? "greedy" : "exact";
}

namespace {

// Candidate restricted to the target: the search only ever counts target
// members.
struct PreparedCandidate {
    size_t index = 0;  // into instance.candidates
    BitVec mask;       // candidate ∩ target
    uint64_t gain0 = 0;
};

std::vector<PreparedCandidate> prepare(const CoverInstance& instance) {
    std::vector<PreparedCandidate> out;
    for (size_t i = 0; i < instance.candidates.size(); ++i) {
        const CoverCandidate& c = instance.candidates[i];
        const uint64_t isz = c.members->intersect_count(instance.target);
        if (isz == 0)
            continue;
        PreparedCandidate p;
        p.index = i;
        p.mask = *c.members;
        p.mask.and_with(instance.target);
        p.gain0 = isz;
        out.push_back(std::move(p));
    }
    return out;
}

uint64_t union_count(const std::vector<const BitVec*>& masks, uint32_t bits) {
    BitVec u(bits);
    for (const BitVec* m : masks)
        u.or_with(*m);
    return u.count();
}

}  // namespace

CoverResult greedy_cover(const CoverInstance& instance, GreedyOptions opts) {
    CoverResult result;
    result.method = CoverMethod::greedy;
    result.optimal = false;
    result.target_size = instance.target.count();
    result.required = required_count(result.target_size, instance.threshold);

    const std::vector<PreparedCandidate> cands = prepare(instance);
    const uint32_t bits = instance.target.bit_capacity();

    std::vector<bool> picked(cands.size(), false);
    std::vector<size_t> picks;
    BitVec covered(bits);
    uint64_t covered_count = 0;

    while (covered_count < result.required) {
        size_t best = cands.size();
        uint64_t best_gain = 0;
        for (size_t i = 0; i < cands.size(); ++i) {
            if (picked[i])
                continue;
            const uint64_t gain = cands[i].mask.difference_count(covered);
            if (gain == 0)
                continue;
            if (gain > best_gain ||
                (gain == best_gain &&
                 instance.candidates[cands[i].index].name <
                     instance.candidates[cands[best].index].name)) {
                best = i;
                best_gain = gain;
            }
        }
        if (best == cands.size())
            break;  // nothing adds coverage; covered is the achievable max
        picked[best] = true;
        picks.push_back(best);
        covered.or_with(cands[best].mask);
        covered_count += best_gain;
    }

    const uint64_t achieved = covered_count;
    if (opts.prune) {
        // A pick is redundant when the rest still reaches the keep level.
        const uint64_t keep = std::min(result.required, achieved);
        for (size_t drop = picks.size(); drop-- > 0;) {
            std::vector<const BitVec*> rest;
            for (const size_t p : picks)
                if (p != picks[drop] && picked[p])
                    rest.push_back(&cands[p].mask);
            if (union_count(rest, bits) >= keep)
                picked[picks[drop]] = false;
        }
        std::erase_if(picks, [&](size_t p) { return !picked[p]; });
    }

    BitVec final_covered(bits);
    for (const size_t p : picks) {
        final_covered.or_with(cands[p].mask);
        result.chosen.push_back(instance.candidates[cands[p].index].name);
    }
    result.covered = final_covered.count();
    result.feasible = result.covered >= result.required;
    return result;
}

namespace {

struct ExactSearch {
    std::span<const PreparedCandidate> cands;
    uint64_t required = 0;
    uint64_t budget = 0;
    uint64_t nodes = 0;
    bool aborted = false;

    std::vector<size_t> current;
    std::vector<size_t> best;
    size_t best_size = 0;

    void run(size_t pos, BitVec& covered, uint64_t covered_count) {
        if (aborted)
            return;
        if (++nodes > budget) {
            aborted = true;
            return;
        }
        if (covered_count >= required) {
            if (current.size() < best_size) {
                best = current;
                best_size = current.size();
            }
            return;
        }
        if (current.size() + 1 >= best_size)
            return;  // even one more pick cannot beat the incumbent
        if (pos == cands.size())
            return;

        // Bound: the largest remaining marginal gain caps progress per pick.
        uint64_t max_gain = 0;
        for (size_t i = pos; i < cands.size(); ++i)
            max_gain = std::max(max_gain, cands[i].mask.difference_count(covered));
        if (max_gain == 0)
            return;
        const uint64_t needed = required - covered_count;
        const uint64_t lower = (needed + max_gain - 1) / max_gain;
        if (current.size() + lower >= best_size)
            return;

        // Include cands[pos] first; the descending-gain order makes that
        // the promising branch.
        const uint64_t gain = cands[pos].mask.difference_count(covered);
        if (gain > 0) {
            BitVec with = covered;
            with.or_with(cands[pos].mask);
            current.push_back(pos);
            run(pos + 1, with, covered_count + gain);
            current.pop_back();
        }
        run(pos + 1, covered, covered_count);
    }
};

}  // namespace

CoverResult exact_cover(const CoverInstance& instance, uint64_t node_budget) {
    CoverResult greedy = greedy_cover(instance);
    if (!greedy.feasible)
        return greedy;  // greedy already reaches the achievable maximum

    std::vector<PreparedCandidate> cands = prepare(instance);
    std::sort(cands.begin(), cands.end(),
              [&](const PreparedCandidate& x, const PreparedCandidate& y) {
                  if (x.gain0 != y.gain0)
                      return x.gain0 > y.gain0;
                  return instance.candidates[x.index].name <
                         instance.candidates[y.index].name;
              });

    ExactSearch search;
    search.cands = cands;
    search.required = greedy.required;
    search.budget = node_budget;
    search.best_size = greedy.chosen.size() + 1;  // strict improvement wanted

    BitVec covered(instance.target.bit_capacity());
    search.run(0, covered, 0);

    if (search.aborted)
        return greedy;

    CoverResult result;
    result.method = CoverMethod::exact;
    result.optimal = true;
    result.target_size = greedy.target_size;
    result.required = greedy.required;
    if (search.best_size <= greedy.chosen.size()) {
        BitVec u(instance.target.bit_capacity());
        for (const size_t i : search.best) {
            u.or_with(cands[i].mask);
            result.chosen.push_back(instance.candidates[cands[i].index].name);
        }
        result.covered = u.count();
    } else {
        // Greedy was already optimal.
        result.chosen = greedy.chosen;
        result.covered = greedy.covered;
    }
    result.feasible = result.covered >= result.required;
    return result;
}

std::string_view to_string(SurveyMode m) {
    switch (m) {
    case SurveyMode::intra_a: return "intra_a";
    case SurveyMode::intra_b: return "intra_b";
    case SurveyMode::a_by_b: return "a_by_b";
    case SurveyMode::b_by_a: return "b_by_a";
    }
    return "?";
}

std::string_view to_string(CoverDirection d) {
    return d == CoverDirection::a_by_b ? "a_by_b" : "b_by_a";
}

namespace {

CoverResult solve_gated(const CoverInstance& instance, const CoverOptions& opts) {
    uint64_t useful = 0;
    for (const CoverCandidate& c : instance.candidates)
        if (c.members->intersect_count(instance.target) > 0)
            ++useful;
    if (useful <= opts.exact_cap)
        return exact_cover(instance, opts.node_budget);
    return greedy_cover(instance);
}

}  // namespace

std::vector<std::pair<std::string, CoverResult>>
cover_survey(const Corpus& corpus, SurveyMode mode, double threshold,
             const CoverOptions& opts) {
    const bool intra = mode == SurveyMode::intra_a || mode == SurveyMode::intra_b;
    const bool survey_a = mode == SurveyMode::intra_a || mode == SurveyMode::a_by_b;
    const auto surveyed =
        corpus.categories(survey_a ? corpus.system_a() : corpus.system_b());
    const auto candidate_cats =
        intra ? surveyed
              : corpus.categories(survey_a ? corpus.system_b() : corpus.system_a());

    std::vector<std::pair<std::string, CoverResult>> out;
    out.reserve(surveyed.size());
    for (const Category& target_cat : surveyed) {
        CoverInstance instance;
        instance.target = target_cat.members;
        instance.threshold = threshold;
        instance.candidates.reserve(candidate_cats.size());
        for (const Category& c : candidate_cats) {
            if (intra && c.name == target_cat.name)
                continue;  // a category never covers itself
            instance.candidates.push_back(CoverCandidate{c.name, &c.members});
        }
        out.emplace_back(target_cat.name, solve_gated(instance, opts));
    }
    return out;
}

CoverResult meta_cover(const Corpus& corpus, CoverDirection direction,
                       double threshold, const CoverOptions& opts) {
    const auto covering = corpus.categories(direction == CoverDirection::a_by_b
                                                ? corpus.system_b()
                                                : corpus.system_a());
    CoverInstance instance;
    instance.target = BitVec::all_set(corpus.journal_count());
    instance.threshold = threshold;
    instance.candidates.reserve(covering.size());
    for (const Category& c : covering)
        instance.candidates.push_back(CoverCandidate{c.name, &c.members});
    return solve_gated(instance, opts);
}

}  // namespace catlas
