#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "catlas/errors.hpp"
#include "catlas/setalgebra.hpp"

#include "support/synthetic.hpp"

using namespace catlas;

namespace {

Category cat(std::string name, std::vector<uint32_t> ids, uint32_t universe,
             std::string system = "A") {
    Category c;
    c.system = std::move(system);
    c.name = std::move(name);
    c.members = BitVec(universe);
    for (const uint32_t id : ids)
        c.members.set(id);
    c.size = c.members.count();
    return c;
}

bool contains_ref(const std::vector<CatRef>& refs, const std::string& name) {
    return std::any_of(refs.begin(), refs.end(),
                       [&](const CatRef& r) { return r.name == name; });
}

}  // namespace

TEST_SUITE("setalgebra") {

TEST_CASE("closeness anchors") {
    const uint32_t n = 32;
    const auto a = cat("A", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, n);
    std::vector<uint32_t> b_ids;
    for (uint32_t i = 0; i < 20; ++i)
        b_ids.push_back(i);
    const auto b = cat("B", b_ids, n);

    CHECK(closeness(a, a) == 1.0);
    CHECK(closeness(a, b) == doctest::Approx(1.0));  // a ⊂ b

    const auto d = cat("D", {30, 31}, n);
    CHECK(closeness(a, d) == 0.0);

    // |A|=10, |B|=20, overlap 9.
    auto a2 = cat("A2", {0, 1, 2, 3, 4, 5, 6, 7, 8, 21}, n);
    CHECK(closeness(a2, b) == doctest::Approx(0.9));
    CHECK(closeness(b, a2) == doctest::Approx(0.9));

    const auto empty = cat("E", {}, n);
    CHECK_THROWS_AS(closeness(a, empty), Error);
}

TEST_CASE("identical member sets give one equivalence and two subset pairs") {
    const uint32_t n = 16;
    std::vector<Category> cats;
    cats.push_back(cat("X", {1, 2, 3}, n));
    cats.push_back(cat("Y", {1, 2, 3}, n));
    const auto report = relate(cats, cats, true);
    CHECK(report.equivalences.size() == 1);
    CHECK(report.subsets.size() == 2);
    CHECK(report.intersections.size() == 1);
    CHECK(report.intersections[0].closeness == 1.0);
}

TEST_CASE("hand-built intra fixture: pure subset, standalone, supersets") {
    const uint32_t n = 16;
    std::vector<Category> cats;
    // "Tiny" = {0}; 0 appears only in Tiny and its supersets Big1, Big2.
    cats.push_back(cat("Tiny", {0}, n));
    cats.push_back(cat("Big1", {0, 1, 2, 3}, n));
    cats.push_back(cat("Big2", {0, 2, 4}, n));
    // "Impure" ⊂ Big1 but journal 1 also sits in "Other" ⊅ Impure.
    cats.push_back(cat("Impure", {1, 2}, n));
    cats.push_back(cat("Other", {1, 5}, n));
    // "Alone" shares nothing.
    cats.push_back(cat("Alone", {9, 10}, n));

    const auto report = relate(cats, cats, true);

    CHECK(contains_ref(report.pure_subsets, "Tiny"));
    CHECK(!contains_ref(report.pure_subsets, "Impure"));
    CHECK(contains_ref(report.standalone, "Alone"));
    CHECK(report.standalone.size() == 1);
    CHECK(contains_ref(report.supersets, "Big1"));
    CHECK(!contains_ref(report.supersets, "Other"));
    CHECK(report.equivalences.empty());

    // Subset pairs: Tiny⊂Big1, Tiny⊂Big2, Impure⊂Big1.
    std::set<std::pair<std::string, std::string>> subs;
    for (const auto& [sub, super] : report.subsets)
        subs.insert({sub.name, super.name});
    CHECK(subs == std::set<std::pair<std::string, std::string>>{
                      {"Impure", "Big1"}, {"Tiny", "Big1"}, {"Tiny", "Big2"}});

    // Standalone categories never appear in an intersection record.
    for (const auto& rec : report.intersections) {
        CHECK(rec.a.name != "Alone");
        CHECK(rec.b.name != "Alone");
        CHECK(rec.size > 0);
    }
}

TEST_CASE("relate properties on random corpora") {
    std::mt19937_64 rng(121);
    for (int trial = 0; trial < 12; ++trial) {
        const auto corpus = testsupport::random_corpus(rng, {50, 7, 9, 3});
        const auto cats_a = corpus.categories("A");
        const auto cats_b = corpus.categories("B");

        for (const bool intra : {true, false}) {
            const auto report = intra ? relate(cats_a, cats_a, true)
                                      : relate(cats_a, cats_b, false);
            // equivalence <=> both subset directions present.
            std::set<std::pair<CatRef, CatRef>> subs(report.subsets.begin(),
                                                     report.subsets.end());
            for (const auto& [a, b] : report.equivalences) {
                CHECK(subs.contains({a, b}));
                CHECK(subs.contains({b, a}));
            }
            for (const auto& [sub, super] : report.subsets) {
                if (subs.contains({super, sub})) {
                    const auto eq = std::minmax(sub, super);
                    CHECK(std::count(report.equivalences.begin(),
                                     report.equivalences.end(),
                                     std::pair{eq.first, eq.second}) +
                              std::count(report.equivalences.begin(),
                                         report.equivalences.end(),
                                         std::pair{eq.second, eq.first}) ==
                          1);
                }
            }
            // pure subset => appears as a sub somewhere.
            for (const CatRef& p : report.pure_subsets) {
                CHECK(std::any_of(report.subsets.begin(), report.subsets.end(),
                                  [&](const auto& pr) { return pr.first == p; }));
            }
            // subset => closeness 1 in the intersection record.
            for (const auto& [sub, super] : report.subsets) {
                const auto it = std::find_if(
                    report.intersections.begin(), report.intersections.end(),
                    [&](const IntersectionRecord& r) {
                        return (r.a == sub && r.b == super) ||
                               (r.a == super && r.b == sub);
                    });
                REQUIRE(it != report.intersections.end());
                CHECK(it->closeness == doctest::Approx(1.0));
            }
        }

        // Swapping sides transposes the inter report.
        const auto ab = relate(cats_a, cats_b, false);
        const auto ba = relate(cats_b, cats_a, false);
        CHECK(ab.subsets.size() == ba.subsets.size());
        CHECK(ab.intersections.size() == ba.intersections.size());
        std::set<std::pair<CatRef, CatRef>> ab_subs(ab.subsets.begin(), ab.subsets.end());
        for (const auto& pr : ba.subsets)
            CHECK(ab_subs.contains(pr));
    }
}

TEST_CASE("intersection histogram") {
    const uint32_t n = 8;
    std::vector<Category> cats;
    cats.push_back(cat("P", {0, 1}, n));
    cats.push_back(cat("Q", {0, 2}, n));
    cats.push_back(cat("R", {0, 3}, n));
    cats.push_back(cat("S", {7}, n));
    const auto hist = intersection_histogram(cats);
    CHECK(hist.at("P") == 2);
    CHECK(hist.at("Q") == 2);
    CHECK(hist.at("R") == 2);
    CHECK(hist.at("S") == 0);

    // Brute-force oracle on a random corpus.
    std::mt19937_64 rng(131);
    const auto corpus = testsupport::random_corpus(rng, {40, 8, 8, 3});
    const auto cats_a = corpus.categories("A");
    const auto h = intersection_histogram(cats_a);
    for (const Category& x : cats_a) {
        size_t expect = 0;
        for (const Category& y : cats_a) {
            if (x.name == y.name)
                continue;
            uint64_t shared = 0;
            for (const uint32_t id : x.members.indices())
                shared += y.members.test(id) ? 1 : 0;
            if (shared > 0)
                ++expect;
        }
        CHECK(h.at(x.name) == expect);
    }
}

TEST_CASE("similarity sweep on a five-category fixture") {
    const uint32_t n = 20;
    std::vector<Category> src, dst;
    src.push_back(cat("S1", {0, 1, 2, 3}, n, "A"));          // 4 members
    src.push_back(cat("S2", {4, 5, 6, 7, 8, 9}, n, "A"));    // 6 members
    src.push_back(cat("S3", {10, 11}, n, "A"));              // 2 members
    src.push_back(cat("S4", {12, 13, 14, 15}, n, "A"));      // share 2/4 with D2
    src.push_back(cat("S5", {16}, n, "A"));                  // no overlap at all
    dst.push_back(cat("D1", {0, 1, 2, 3, 4}, n, "B"));       // S1 fully inside
    dst.push_back(cat("D2", {5, 6, 7, 12, 13}, n, "B"));     // S2: 3/6, S4: 2/4
    dst.push_back(cat("D3", {10}, n, "B"));                  // S3: 1/2

    const auto sweep = similarity_sweep(src, dst, 5);
    REQUIRE(sweep.size() == 20);

    // Brute-force recount at each threshold.
    for (const auto& point : sweep) {
        size_t expect = 0;
        for (const Category& s : src) {
            bool hit = false;
            for (const Category& d : dst) {
                uint64_t shared = 0;
                for (const uint32_t id : s.members.indices())
                    shared += d.members.test(id) ? 1 : 0;
                const double pct =
                    static_cast<double>(shared) / static_cast<double>(s.size) * 100.0;
                if (pct > static_cast<double>(point.threshold_pct)) {
                    hit = true;
                    break;
                }
            }
            expect += hit ? 1 : 0;
        }
        CHECK(point.fraction ==
              doctest::Approx(static_cast<double>(expect) / 5.0).epsilon(1e-12));
    }

    // Strict comparison: S1's 100% share does not pass the 100 threshold.
    CHECK(sweep.back().threshold_pct == 100);
    CHECK(sweep.back().fraction == 0.0);
    // Monotone non-increasing.
    for (size_t i = 1; i < sweep.size(); ++i)
        CHECK(sweep[i].fraction <= sweep[i - 1].fraction);

    CHECK_THROWS_AS(similarity_sweep(src, dst, 7), Error);
    CHECK_THROWS_AS(similarity_sweep(src, dst, 0), Error);
}

TEST_CASE("sweep monotone on random corpora") {
    std::mt19937_64 rng(139);
    for (int trial = 0; trial < 10; ++trial) {
        const auto corpus = testsupport::random_corpus(rng, {60, 8, 10, 4});
        for (const bool ab : {true, false}) {
            const auto sweep = similarity_sweep(
                corpus.categories(ab ? "A" : "B"), corpus.categories(ab ? "B" : "A"), 5);
            for (size_t i = 1; i < sweep.size(); ++i)
                CHECK(sweep[i].fraction <= sweep[i - 1].fraction);
            CHECK(sweep.front().fraction <= 1.0);
        }
    }
}

TEST_CASE("adding a journal never decreases intersection counts") {
    std::mt19937_64 rng(151);
    for (int trial = 0; trial < 20; ++trial) {
        const uint32_t n = 24;
        std::vector<Category> cats;
        for (int c = 0; c < 5; ++c) {
            std::vector<uint32_t> ids;
            for (uint32_t i = 0; i < n; ++i)
                if (rng() % 3 == 0)
                    ids.push_back(i);
            cats.push_back(cat("C" + std::to_string(c), ids, n));
        }
        Category grown = cats[0];
        grown.members.set(static_cast<uint32_t>(rng() % n));
        grown.size = grown.members.count();
        for (size_t j = 1; j < cats.size(); ++j) {
            CHECK(grown.members.intersect_count(cats[j].members) >=
                  cats[0].members.intersect_count(cats[j].members));
        }
    }
}

TEST_CASE("report lists every participating category with its size") {
    std::mt19937_64 rng(152);
    const auto corpus = testsupport::random_corpus(rng, {30, 5, 6, 3});
    const auto intra = relate(corpus.categories("A"), corpus.categories("A"), true);
    CHECK(intra.categories.size() == corpus.categories("A").size());
    const auto inter = relate(corpus.categories("A"), corpus.categories("B"), false);
    CHECK(inter.categories.size() ==
          corpus.categories("A").size() + corpus.categories("B").size());
    for (const auto& [r, size] : inter.categories)
        CHECK(size >= 1);
}

TEST_CASE("json serialization is stable and name-sorted") {
    std::mt19937_64 rng(149);
    const auto corpus = testsupport::random_corpus(rng, {30, 5, 5, 3});
    const auto r1 = relate(corpus.categories("A"), corpus.categories("B"), false);
    const auto r2 = relate(corpus.categories("A"), corpus.categories("B"), false);
    CHECK(to_json_string(r1) == to_json_string(r2));
    for (size_t i = 1; i < r1.intersections.size(); ++i) {
        const auto& prev = r1.intersections[i - 1];
        const auto& cur = r1.intersections[i];
        CHECK(std::tie(prev.a, prev.b) < std::tie(cur.a, cur.b));
    }
}

}  // TEST_SUITE
