#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "catlas/errors.hpp"
#include "catlas/metrics.hpp"
#include "catlas/report.hpp"
#include "catlas/setalgebra.hpp"

#include "support/synthetic.hpp"

using namespace catlas;

namespace {

std::filesystem::path temp_dir(const char* leaf) {
    const auto dir = std::filesystem::temp_directory_path() / "catlas_tests" / leaf;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const Artifact& find_artifact(const ReportBundle& bundle, const std::string& name) {
    for (const Artifact& a : bundle.artifacts)
        if (a.filename == name)
            return a;
    FAIL("artifact not found: ", name);
    static Artifact dummy;
    return dummy;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("histogram binning") {
    const std::vector<uint64_t> values{3, 7, 16};
    const auto bins = histogram(values, 15);
    REQUIRE(bins.size() == 2);
    CHECK(bins[0] == std::pair<uint64_t, uint64_t>{0, 2});
    CHECK(bins[1] == std::pair<uint64_t, uint64_t>{15, 1});

    CHECK(histogram({}, 15).empty());

    // Interior gaps stay, trailing empties go, counts sum to n.
    const std::vector<uint64_t> gap{1, 46};
    const auto gap_bins = histogram(gap, 15);
    REQUIRE(gap_bins.size() == 4);
    CHECK(gap_bins[1].second == 0);
    CHECK(gap_bins[2].second == 0);
    CHECK(gap_bins[3] == std::pair<uint64_t, uint64_t>{45, 1});

    std::mt19937_64 rng(191);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<uint64_t> v(rng() % 50);
        for (auto& x : v)
            x = rng() % 200;
        const uint64_t width = 1 + rng() % 20;
        const auto b = histogram(v, width);
        uint64_t total = 0;
        for (size_t i = 0; i < b.size(); ++i) {
            CHECK(b[i].first == i * width);
            // Filter-and-count oracle per bin.
            uint64_t expect = 0;
            for (const uint64_t x : v)
                if (x >= b[i].first && x < b[i].first + width)
                    ++expect;
            CHECK(b[i].second == expect);
            total += b[i].second;
        }
        CHECK(total == v.size());
        if (!b.empty())
            CHECK(b.back().second > 0);
    }
}

TEST_CASE("size extremes") {
    std::mt19937_64 rng(193);
    const auto corpus = testsupport::random_corpus(rng, {60, 6, 8, 3});
    const auto cats = corpus.categories("A");
    const auto ex = size_extremes(cats, 10, 30);
    for (const auto& [name, size] : ex.small)
        CHECK(size < 10);
    for (const auto& [name, size] : ex.large)
        CHECK(size > 30);
    // Filter oracle.
    size_t small_expect = 0, large_expect = 0;
    for (const Category& c : cats) {
        small_expect += c.size < 10 ? 1 : 0;
        large_expect += c.size > 30 ? 1 : 0;
    }
    CHECK(ex.small.size() == small_expect);
    CHECK(ex.large.size() == large_expect);
    CHECK(std::is_sorted(ex.small.begin(), ex.small.end()));

    // Uniform sizes with wide cutoffs: both lists empty.
    const auto none = size_extremes(cats, 1, 1u << 20);
    CHECK(none.small.empty());
    CHECK(none.large.empty());
}

TEST_CASE("pipeline on a tiny three-journal fixture") {
    const auto dir = temp_dir("tiny");
    const auto in_a = dir / "a.csv";
    const auto in_b = dir / "b.csv";
    {
        std::ofstream out(in_a, std::ios::binary);
        out << "name,issn,eissn,categories,score\n"
            << "Alpha,0001-1111,,Math;Physics,2.0\n"
            << "Beta,0002-2222,,Math,1.0\n"
            << "Gamma,0003-3333,,Physics,3.5\n";
    }
    {
        std::ofstream out(in_b, std::ios::binary);
        out << "name,issn,eissn,categories,score,active\n"
            << "Alpha,00011111,,Algebra,1.5,true\n"
            << "Beta,0002-2222,,Algebra;Geometry,0.5,true\n"
            << "Gamma,0003-3333,,Geometry,2.5,true\n";
    }

    RunConfig config;
    config.input_a = in_a;
    config.input_b = in_b;
    config.out_dir = dir / "out";
    const ReportBundle bundle = run_pipeline(config);

    // Every expected file exists on disk and in the bundle.
    for (const char* name :
         {"table1.json", "match_diagnostics.csv",
          "histogram_journals_per_category_A.csv",
          "histogram_categories_per_journal_A.csv", "size_extremes_A.csv",
          "score_buckets_A.csv", "dispersion_A.csv", "dispersion_summary_A.csv",
          "histogram_journals_per_category_B.csv",
          "histogram_categories_per_journal_B.csv", "size_extremes_B.csv",
          "score_buckets_B.csv", "dispersion_B.csv", "dispersion_summary_B.csv",
          "stat_tests.json", "relations_intra_A.json", "relations_intra_B.json",
          "relations_inter_A_B.json", "relations_inter_B_A.json",
          "sweep_A_to_B.csv", "sweep_B_to_A.csv", "cover_survey.csv",
          "meta_cover.csv", "run_summary.json"}) {
        CAPTURE(name);
        CHECK(std::filesystem::exists(config.out_dir / name));
        CHECK(!find_artifact(bundle, name).content.empty());
    }

    // table1 agrees with a direct corpus build.
    const auto table1 = nlohmann::json::parse(find_artifact(bundle, "table1.json").content);
    CHECK(table1["A"]["journals_analysed"] == 3);
    CHECK(table1["A"]["categories"] == 2);
    CHECK(table1["B"]["categories"] == 2);
    CHECK(table1["A"]["journals_per_category"]["mean"] ==
          doctest::Approx(2.0));  // Math: 2, Physics: 2
    CHECK(table1["A"]["categories_per_journal"]["median"] == doctest::Approx(1.0));

    // Bundle internal consistency: category counts match the intra reports.
    const PipelineData data = ingest_inputs(config);
    const auto intra_a = relate(data.corpus.categories("A"),
                                data.corpus.categories("A"), true);
    const auto parsed = nlohmann::json::parse(
        find_artifact(bundle, "relations_intra_A.json").content);
    CHECK(parsed["intersections"].size() == intra_a.intersections.size());
    CHECK(parsed["categories"].size() == table1["A"]["categories"].get<size_t>());
    const auto parsed_b = nlohmann::json::parse(
        find_artifact(bundle, "relations_intra_B.json").content);
    CHECK(parsed_b["categories"].size() == table1["B"]["categories"].get<size_t>());

    // Alpha is in Math & Physics (A side): dispersion rows line up with
    // direct metric calls.
    const auto disp = dispersion_table(data.corpus, "A");
    const std::string disp_csv = find_artifact(bundle, "dispersion_A.csv").content;
    size_t lines = static_cast<size_t>(
        std::count(disp_csv.begin(), disp_csv.end(), '\n'));
    CHECK(lines == disp.size() + 1);  // header + one row per journal
}

TEST_CASE("pipeline determinism and missing input behavior") {
    const auto dir = temp_dir("determinism");
    const auto [in_a, in_b] = testsupport::write_synthetic_tables(dir / "in", 42, 80);

    RunConfig config;
    config.input_a = in_a;
    config.input_b = in_b;

    config.out_dir = dir / "out1";
    const ReportBundle first = run_pipeline(config);
    config.out_dir = dir / "out2";
    const ReportBundle second = run_pipeline(config);

    REQUIRE(first.artifacts.size() == second.artifacts.size());
    for (size_t i = 0; i < first.artifacts.size(); ++i) {
        CHECK(first.artifacts[i].filename == second.artifacts[i].filename);
        CHECK(first.artifacts[i].content == second.artifacts[i].content);
        // And the bytes on disk agree.
        CHECK(slurp(dir / "out1" / first.artifacts[i].filename) ==
              slurp(dir / "out2" / first.artifacts[i].filename));
    }

    // Missing input: throws before writing anything.
    RunConfig bad = config;
    bad.input_a = dir / "nope.csv";
    bad.out_dir = dir / "never";
    CHECK_THROWS_AS(run_pipeline(bad), InputNotFoundError);
    CHECK(!std::filesystem::exists(bad.out_dir));
}

TEST_CASE("empty corpus is a distinct failure") {
    const auto dir = temp_dir("empty");
    const auto in_a = dir / "a.csv";
    const auto in_b = dir / "b.csv";
    {
        std::ofstream out(in_a, std::ios::binary);
        out << "name,issn,eissn,categories,score\nOnly A,1111-1111,,C,1.0\n";
    }
    {
        std::ofstream out(in_b, std::ios::binary);
        out << "name,issn,eissn,categories,score\nOnly B,2222-2222,,D,1.0\n";
    }
    RunConfig config;
    config.input_a = in_a;
    config.input_b = in_b;
    config.out_dir = dir / "out";
    CHECK_THROWS_AS(run_pipeline(config), EmptyCorpusError);
    CHECK(!std::filesystem::exists(config.out_dir));
}

TEST_CASE("match diagnostics carry reasons") {
    const auto dir = temp_dir("diag");
    const auto in_a = dir / "a.csv";
    const auto in_b = dir / "b.csv";
    {
        std::ofstream out(in_a, std::ios::binary);
        out << "name,issn,eissn,categories,score\n"
            << "Matched,1111-1111,,C,1.0\n"
            << "Unscored,3333-3333,,C,\n"
            << "Lonely A,4444-4444,,C,1.0\n";
    }
    {
        std::ofstream out(in_b, std::ios::binary);
        out << "name,issn,eissn,categories,score,active\n"
            << "Matched,1111-1111,,D,1.0,true\n"
            << "Unscored,3333-3333,,D,2.0,true\n"
            << "Inactive,5555-5555,,D,1.0,false\n";
    }
    RunConfig config;
    config.input_a = in_a;
    config.input_b = in_b;
    config.out_dir = dir / "out";
    const ReportBundle bundle = run_pipeline(config);
    const std::string diag = find_artifact(bundle, "match_diagnostics.csv").content;
    CHECK(diag.find("Lonely A,4444-4444,,unmatched") != std::string::npos);
    CHECK(diag.find("Inactive,5555-5555,,inactive") != std::string::npos);
    CHECK(diag.find("Unscored,3333-3333,,missing_score") != std::string::npos);

    const auto summary =
        nlohmann::json::parse(find_artifact(bundle, "run_summary.json").content);
    CHECK(summary["corpus"]["journals"] == 1);
    CHECK(summary["corpus"]["dropped_missing_score"] == 1);
    CHECK(summary["matching"]["unmatched_a"] == 1);
    // Inactive row was filtered before matching.
    CHECK(summary["inputs"]["B"]["dropped_inactive"] == 1);
}

}  // TEST_SUITE
