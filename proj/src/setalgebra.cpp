#include "catlas/setalgebra.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "catlas/errors.hpp"

namespace catlas {

namespace {

CatRef ref(const Category& c) {
    return CatRef{c.system, c.name};
}

bool same_category(const Category& x, const Category& y) {
    return x.system == y.system && x.name == y.name;
}

}  // namespace

RelationReport relate(std::span<const Category> left,
                      std::span<const Category> right, bool same_system) {
    RelationReport report;

    for (const Category& c : left)
        report.categories.emplace_back(ref(c), c.size);
    if (!same_system)
        for (const Category& c : right)
            report.categories.emplace_back(ref(c), c.size);

    std::vector<size_t> intersecting_left(left.size(), 0);
    std::vector<size_t> intersecting_right(right.size(), 0);
    // supersets_of[...] lists, per category, the opposite-span indices of
    // its strict-or-equal supersets; non_superset_overlap marks a category
    // that intersects something that does not contain it.
    std::vector<bool> has_superset_left(left.size(), false);
    std::vector<bool> impure_left(left.size(), false);
    std::vector<bool> has_superset_right(right.size(), false);
    std::vector<bool> impure_right(right.size(), false);
    std::vector<bool> is_super_left(left.size(), false);
    std::vector<bool> is_super_right(right.size(), false);

    for (size_t i = 0; i < left.size(); ++i) {
        const Category& a = left[i];
        const size_t j_begin = same_system ? i + 1 : 0;
        for (size_t j = j_begin; j < right.size(); ++j) {
            const Category& b = right[j];
            if (!same_system && same_category(a, b))
                continue;
            const uint64_t isz = a.members.intersect_count(b.members);
            if (isz == 0)
                continue;

            ++intersecting_left[i];
            ++intersecting_right[j];

            const bool a_in_b = isz == a.size;
            const bool b_in_a = isz == b.size;
            if (a_in_b) {
                report.subsets.emplace_back(ref(a), ref(b));
                has_superset_left[i] = true;
                is_super_right[j] = true;
            } else {
                // a touches a category that does not contain it
                impure_left[i] = true;
            }
            if (b_in_a) {
                report.subsets.emplace_back(ref(b), ref(a));
                has_superset_right[j] = true;
                is_super_left[i] = true;
            } else {
                impure_right[j] = true;
            }
            if (a_in_b && b_in_a)
                report.equivalences.emplace_back(ref(a), ref(b));

            IntersectionRecord rec;
            // Canonical orientation keeps the record symmetric.
            if (ref(a) <= ref(b)) {
                rec.a = ref(a);
                rec.b = ref(b);
            } else {
                rec.a = ref(b);
                rec.b = ref(a);
            }
            rec.size = isz;
            rec.closeness =
                static_cast<double>(isz) / static_cast<double>(std::min(a.size, b.size));
            report.intersections.push_back(std::move(rec));
        }
    }

    if (same_system) {
        // Each unordered pair was visited once with the lower index in the
        // left role; fold the right-role flags back in.
        for (size_t i = 0; i < left.size(); ++i) {
            intersecting_left[i] += intersecting_right[i];
            if (has_superset_right[i])
                has_superset_left[i] = true;
            if (impure_right[i])
                impure_left[i] = true;
            if (is_super_right[i])
                is_super_left[i] = true;
        }
    }

    for (size_t i = 0; i < left.size(); ++i) {
        if (intersecting_left[i] == 0)
            report.standalone.push_back(ref(left[i]));
        if (has_superset_left[i] && !impure_left[i])
            report.pure_subsets.push_back(ref(left[i]));
        if (is_super_left[i])
            report.supersets.push_back(ref(left[i]));
    }
    if (!same_system) {
        for (size_t j = 0; j < right.size(); ++j) {
            if (intersecting_right[j] == 0)
                report.standalone.push_back(ref(right[j]));
            if (has_superset_right[j] && !impure_right[j])
                report.pure_subsets.push_back(ref(right[j]));
            if (is_super_right[j])
                report.supersets.push_back(ref(right[j]));
        }
    }

    std::sort(report.categories.begin(), report.categories.end());
    std::sort(report.equivalences.begin(), report.equivalences.end());
    std::sort(report.subsets.begin(), report.subsets.end());
    std::sort(report.pure_subsets.begin(), report.pure_subsets.end());
    std::sort(report.supersets.begin(), report.supersets.end());
    std::sort(report.standalone.begin(), report.standalone.end());
    std::sort(report.intersections.begin(), report.intersections.end(),
              [](const IntersectionRecord& x, const IntersectionRecord& y) {
                  return std::tie(x.a, x.b) < std::tie(y.a, y.b);
              });
    return report;
}

double closeness(const Category& a, const Category& b) {
    if (a.size == 0 || b.size == 0)
        throw Error("closeness of empty category");
    const uint64_t isz = a.members.intersect_count(b.members);
    return static_cast<double>(isz) / static_cast<double>(std::min(a.size, b.size));
}

std::map<std::string, size_t> intersection_histogram(std::span<const Category> cats) {
    std::map<std::string, size_t> out;
    for (const Category& c : cats)
        out[c.name] = 0;
    for (size_t i = 0; i < cats.size(); ++i) {
        for (size_t j = i + 1; j < cats.size(); ++j) {
            if (cats[i].members.intersect_count(cats[j].members) > 0) {
                ++out[cats[i].name];
                ++out[cats[j].name];
            }
        }
    }
    return out;
}

std::vector<SweepPoint> similarity_sweep(std::span<const Category> src,
                                         std::span<const Category> dst,
                                         unsigned step_pct) {
    if (step_pct == 0 || 100 % step_pct != 0)
        throw Error("sweep step must divide 100");

    // Best shared fraction (percent of the src category's size) per src
    // category; thresholds then just compare against it.
    std::vector<double> best_share(src.size(), 0.0);
    for (size_t i = 0; i < src.size(); ++i) {
        const Category& s = src[i];
        for (const Category& d : dst) {
            if (same_category(s, d))
                continue;
            const uint64_t isz = s.members.intersect_count(d.members);
            if (isz == 0)
                continue;
            const double share =
                static_cast<double>(isz) / static_cast<double>(s.size) * 100.0;
            best_share[i] = std::max(best_share[i], share);
        }
    }

    std::vector<SweepPoint> out;
    for (unsigned t = step_pct; t <= 100; t += step_pct) {
        size_t hit = 0;
        for (const double share : best_share)
            if (share > static_cast<double>(t))
                ++hit;
        out.push_back(SweepPoint{
            t, src.empty() ? 0.0
                           : static_cast<double>(hit) / static_cast<double>(src.size())});
    }
    return out;
}

namespace {

nlohmann::ordered_json json_ref(const CatRef& r) {
    return nlohmann::ordered_json{{"system", r.system}, {"name", r.name}};
}

nlohmann::ordered_json json_pairs(const std::vector<std::pair<CatRef, CatRef>>& pairs,
                                  const char* first, const char* second) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [a, b] : pairs)
        arr.push_back(nlohmann::ordered_json{{first, json_ref(a)}, {second, json_ref(b)}});
    return arr;
}

nlohmann::ordered_json json_refs(const std::vector<CatRef>& refs) {
    auto arr = nlohmann::ordered_json::array();
    for (const CatRef& r : refs)
        arr.push_back(json_ref(r));
    return arr;
}

}  // namespace

std::string to_json_string(const RelationReport& report) {
    nlohmann::ordered_json j;
    auto cats = nlohmann::ordered_json::array();
    for (const auto& [r, size] : report.categories)
        cats.push_back(nlohmann::ordered_json{
            {"system", r.system}, {"name", r.name}, {"size", size}});
    j["categories"] = cats;
    j["equivalences"] = json_pairs(report.equivalences, "a", "b");
    j["subsets"] = json_pairs(report.subsets, "sub", "super");
    j["pure_subsets"] = json_refs(report.pure_subsets);
    j["supersets"] = json_refs(report.supersets);
    j["standalone"] = json_refs(report.standalone);
    auto arr = nlohmann::ordered_json::array();
    for (const IntersectionRecord& rec : report.intersections) {
        arr.push_back(nlohmann::ordered_json{{"a", json_ref(rec.a)},
                                             {"b", json_ref(rec.b)},
                                             {"size", rec.size},
                                             {"closeness", rec.closeness}});
    }
    j["intersections"] = arr;
    return j.dump(2) + "\n";
}

}  // namespace catlas
