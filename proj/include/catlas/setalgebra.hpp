#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catlas/corpus.hpp"

namespace catlas {

struct CatRef {
    std::string system;
    std::string name;

    auto operator<=>(const CatRef&) const = default;
};

struct IntersectionRecord {
    CatRef a;
    CatRef b;
    uint64_t size = 0;      // |A ∩ B|
    double closeness = 0.0;  // size / min(|A|, |B|)
};

struct RelationReport {
    // Every category that took part in the comparison, with its size.
    std::vector<std::pair<CatRef, uint64_t>> categories;
    std::vector<std::pair<CatRef, CatRef>> equivalences;
    std::vector<std::pair<CatRef, CatRef>> subsets;  // (sub, super)
    std::vector<CatRef> pure_subsets;
    std::vector<CatRef> supersets;
    std::vector<CatRef> standalone;
    std::vector<IntersectionRecord> intersections;  // only size > 0
};

// Pairwise member-set comparison. For same_system pass the same span twice;
// self-pairs are skipped. A category is a pure subset when it has a superset
// and every category intersecting it is one of its supersets; standalone
// when it intersects nothing. All output vectors are name-sorted.
RelationReport relate(std::span<const Category> left,
                      std::span<const Category> right, bool same_system);

// Overlap coefficient |A ∩ B| / min(|A|, |B|). Throws Error when either
// category is empty.
double closeness(const Category& a, const Category& b);

// For each category, how many of the others it shares at least one journal
// with.
std::map<std::string, size_t> intersection_histogram(std::span<const Category> cats);

struct SweepPoint {
    unsigned threshold_pct = 0;
    double fraction = 0.0;
};

// For thresholds step, 2*step, ..., 100 (percent): the fraction of src
// categories with at least one dst category sharing strictly more than the
// threshold fraction of the src category's journals. step must divide 100.
std::vector<SweepPoint> similarity_sweep(std::span<const Category> src,
                                         std::span<const Category> dst,
                                         unsigned step_pct);

// Stable JSON rendering (2-space indent, name-sorted arrays).
std::string to_json_string(const RelationReport& report);

}  // namespace catlas
