#include "catlas/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "catlas/cover.hpp"
#include "catlas/csv.hpp"
#include "catlas/errors.hpp"
#include "catlas/metrics.hpp"
#include "catlas/setalgebra.hpp"

namespace catlas {

using ordered_json = nlohmann::ordered_json;

std::vector<std::pair<uint64_t, uint64_t>> histogram(std::span<const uint64_t> values,
                                                     uint64_t bin_width) {
    if (bin_width == 0)
        throw Error("histogram bin width must be positive");
    if (values.empty())
        return {};
    const uint64_t max_value = *std::max_element(values.begin(), values.end());
    if (max_value / bin_width >= (uint64_t{1} << 24))
        throw Error("histogram would need too many bins; increase the bin width");
    std::vector<std::pair<uint64_t, uint64_t>> bins(max_value / bin_width + 1);
    for (size_t i = 0; i < bins.size(); ++i)
        bins[i].first = static_cast<uint64_t>(i) * bin_width;
    for (const uint64_t v : values)
        ++bins[v / bin_width].second;
    while (!bins.empty() && bins.back().second == 0)
        bins.pop_back();
    return bins;
}

SizeExtremes size_extremes(std::span<const Category> categories,
                           uint64_t small_cutoff, uint64_t large_cutoff) {
    if (small_cutoff == 0 || large_cutoff == 0)
        throw Error("size cutoffs must be positive");
    SizeExtremes out;
    for (const Category& c : categories) {  // already name-sorted
        if (c.size < small_cutoff)
            out.small.emplace_back(c.name, c.size);
        if (c.size > large_cutoff)
            out.large.emplace_back(c.name, c.size);
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt(uint64_t v) {
    return std::to_string(v);
}

ordered_json json_stats(const DescriptiveStats& s) {
    return ordered_json{{"mean", s.mean}, {"sd", s.sd}, {"median", s.median}};
}

}  // namespace

PipelineData ingest_inputs(const RunConfig& config) {
    if (config.thresholds.empty())
        throw Error("at least one cover threshold is required");
    for (const double t : config.thresholds)
        if (t <= 0.0 || t > 1.0)
            throw Error("cover thresholds must lie in (0, 1]");
    if (config.bin_width == 0)
        throw Error("bin width must be positive");
    if (config.sweep_step == 0 || 100 % config.sweep_step != 0)
        throw Error("sweep step must divide 100");

    for (const auto* path : {&config.input_a, &config.input_b})
        if (!std::filesystem::exists(*path))
            throw InputNotFoundError("input file not found: " + path->string());

    PipelineData data;
    data.raw_a = read_journal_table(config.input_a, config.label_a);
    data.raw_b = read_journal_table(config.input_b, config.label_b);
    auto [matches, diag] = match_journals(data.raw_a.records, data.raw_b.records);
    data.matches = std::move(matches);
    data.match_diag = std::move(diag);
    data.corpus = build_corpus(data.matches);
    return data;
}

std::vector<Artifact> ingest_artifacts(const PipelineData& data,
                                       const RunConfig& config) {
    std::vector<Artifact> out;

    // Per-system corpus summary.
    ordered_json table1;
    for (const bool side_a : {true, false}) {
        const std::string& label = side_a ? config.label_a : config.label_b;
        const SystemStats& stats = side_a ? data.corpus.diagnostics().stats_a
                                          : data.corpus.diagnostics().stats_b;
        const IngestResult& raw = side_a ? data.raw_a : data.raw_b;
        ordered_json sys;
        sys["categories"] = stats.categories;
        sys["journals_input"] = raw.rows;
        sys["journals_analysed"] = data.corpus.journal_count();
        sys["journals_per_category"] = json_stats(stats.journals_per_category);
        sys["categories_per_journal"] = json_stats(stats.categories_per_journal);
        table1[label] = std::move(sys);
    }
    out.push_back({"table1.json", table1.dump(2) + "\n"});

    // Every excluded record with its reason.
    struct DiagRow {
        std::string system, name, issn, eissn, reason;
    };
    std::vector<DiagRow> rows;
    auto add = [&rows](const JournalRecord& r, const char* reason) {
        rows.push_back(
            {r.system, r.name, r.issn.value_or(""), r.eissn.value_or(""), reason});
    };
    for (const JournalRecord& r : data.raw_a.dropped_inactive)
        add(r, "inactive");
    for (const JournalRecord& r : data.raw_b.dropped_inactive)
        add(r, "inactive");
    for (const size_t i : data.match_diag.unmatched_a)
        add(data.raw_a.records[i], "unmatched");
    for (const size_t i : data.match_diag.unmatched_b)
        add(data.raw_b.records[i], "unmatched");
    for (const MatchedJournal& m : data.matches) {
        if (!m.a.score || !m.b.score) {
            add(m.a, "missing_score");
            add(m.b, "missing_score");
        }
    }
    std::sort(rows.begin(), rows.end(), [](const DiagRow& x, const DiagRow& y) {
        return std::tie(x.system, x.reason, x.name, x.issn) <
               std::tie(y.system, y.reason, y.name, y.issn);
    });
    std::string csv_text;
    csv::append_row(csv_text, std::vector<std::string>{"system", "name", "issn",
                                                       "eissn", "reason"});
    for (const DiagRow& r : rows)
        csv::append_row(csv_text,
                        std::vector<std::string>{r.system, r.name, r.issn, r.eissn,
                                                 r.reason});
    out.push_back({"match_diagnostics.csv", std::move(csv_text)});
    return out;
}

namespace {

Artifact histogram_artifact(std::string filename,
                            const std::vector<std::pair<uint64_t, uint64_t>>& bins) {
    std::string text;
    csv::append_row(text, std::vector<std::string>{"bin_start", "count"});
    for (const auto& [start, count] : bins)
        csv::append_row(text, std::vector<std::string>{fmt(start), fmt(count)});
    return {std::move(filename), std::move(text)};
}

std::string boxplot_fields(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    std::string out;
    out += fmt(values.front());
    out += ',' + fmt(stats::quantile_sorted(values, 0.25));
    out += ',' + fmt(stats::quantile_sorted(values, 0.5));
    out += ',' + fmt(stats::quantile_sorted(values, 0.75));
    out += ',' + fmt(values.back());
    out += ',' + fmt(stats::mean(values));
    out += ',' + fmt(stats::population_sd(values));
    return out;
}

}  // namespace

std::vector<Artifact> stats_artifacts(const Corpus& corpus, const RunConfig& config) {
    std::vector<Artifact> out;

    for (const bool side_a : {true, false}) {
        const std::string& label = side_a ? corpus.system_a() : corpus.system_b();
        const auto cats = corpus.categories(label);

        std::vector<uint64_t> category_sizes;
        category_sizes.reserve(cats.size());
        for (const Category& c : cats)
            category_sizes.push_back(c.size);
        out.push_back(histogram_artifact("histogram_journals_per_category_" + label +
                                             ".csv",
                                         histogram(category_sizes, config.bin_width)));

        std::vector<uint64_t> per_journal;
        per_journal.reserve(corpus.journal_count());
        for (const uint32_t c : corpus.category_counts(label))
            per_journal.push_back(c);
        out.push_back(histogram_artifact("histogram_categories_per_journal_" + label +
                                             ".csv",
                                         histogram(per_journal, 1)));

        const SizeExtremes extremes =
            size_extremes(cats, config.small_cutoff, config.large_cutoff);
        std::string ex_text;
        csv::append_row(ex_text,
                        std::vector<std::string>{"kind", "category", "journals"});
        for (const auto& [name, size] : extremes.small)
            csv::append_row(ex_text, std::vector<std::string>{"small", name, fmt(size)});
        for (const auto& [name, size] : extremes.large)
            csv::append_row(ex_text, std::vector<std::string>{"large", name, fmt(size)});
        out.push_back({"size_extremes_" + label + ".csv", std::move(ex_text)});

        std::string bucket_text;
        csv::append_row(bucket_text,
                        std::vector<std::string>{"category_count", "n", "min", "q1",
                                                 "median", "q3", "max", "mean", "sd"});
        for (const ScoreBucketStats& b : score_buckets(corpus, label)) {
            csv::append_row(bucket_text,
                            std::vector<std::string>{
                                fmt(uint64_t{b.category_count}), fmt(uint64_t{b.n}),
                                fmt(b.min), fmt(b.q1), fmt(b.median), fmt(b.q3),
                                fmt(b.max), fmt(b.mean), fmt(b.sd)});
        }
        out.push_back({"score_buckets_" + label + ".csv", std::move(bucket_text)});

        const std::vector<RankDispersion> table = dispersion_table(corpus, label);
        std::string disp_text;
        csv::append_row(disp_text,
                        std::vector<std::string>{"corpus_id", "name", "category_count",
                                                 "mean_percentile", "mm", "var"});
        for (const RankDispersion& d : table) {
            const MatchedJournal& j = corpus.journals()[d.journal];
            csv::append_row(disp_text,
                            std::vector<std::string>{
                                fmt(uint64_t{d.journal}),
                                side_a ? j.a.name : j.b.name,
                                fmt(uint64_t{d.category_count}),
                                fmt(d.mean_percentile), fmt(d.mm), fmt(d.var)});
        }
        out.push_back({"dispersion_" + label + ".csv", std::move(disp_text)});

        std::map<uint32_t, std::pair<std::vector<double>, std::vector<double>>> groups;
        for (const RankDispersion& d : table) {
            groups[d.category_count].first.push_back(d.mm);
            groups[d.category_count].second.push_back(d.var);
        }
        std::string sum_text;
        csv::append_row(sum_text,
                        std::vector<std::string>{
                            "category_count", "n", "mm_min", "mm_q1", "mm_median",
                            "mm_q3", "mm_max", "mm_mean", "mm_sd", "var_min", "var_q1",
                            "var_median", "var_q3", "var_max", "var_mean", "var_sd"});
        for (auto& [count, mm_var] : groups) {
            sum_text += fmt(uint64_t{count});
            sum_text += ',' + fmt(uint64_t{mm_var.first.size()});
            sum_text += ',' + boxplot_fields(mm_var.first);
            sum_text += ',' + boxplot_fields(mm_var.second);
            sum_text += '\n';
        }
        out.push_back({"dispersion_summary_" + label + ".csv", std::move(sum_text)});
    }

    // Statistical tests: category-count comparison across systems and the
    // dispersion-vs-count correlations per system.
    ordered_json tests;
    {
        std::vector<std::pair<long, long>> pairs;
        const auto ca = corpus.category_counts(corpus.system_a());
        const auto cb = corpus.category_counts(corpus.system_b());
        pairs.reserve(ca.size());
        for (size_t i = 0; i < ca.size(); ++i)
            pairs.emplace_back(static_cast<long>(ca[i]), static_cast<long>(cb[i]));
        try {
            const WilcoxonResult w = wilcoxon_signed_rank(pairs);
            tests["wilcoxon_categories_per_journal"] =
                ordered_json{{"statistic", w.statistic}, {"p", w.p}, {"n", w.n}};
        } catch (const DegenerateStatError& e) {
            tests["wilcoxon_categories_per_journal"] = ordered_json{{"error", e.what()}};
        }
    }
    for (const bool side_a : {true, false}) {
        const std::string& label = side_a ? corpus.system_a() : corpus.system_b();
        std::vector<double> counts, mm, var;
        for (const RankDispersion& d : dispersion_table(corpus, label)) {
            counts.push_back(static_cast<double>(d.category_count));
            mm.push_back(d.mm);
            var.push_back(d.var);
        }
        ordered_json sys;
        for (const auto& [key, values] :
             {std::pair{"mm_vs_category_count", &mm},
              std::pair{"var_vs_category_count", &var}}) {
            try {
                const Correlation c = pearson(counts, *values);
                sys[key] = ordered_json{{"r", c.r}, {"p", c.p}};
            } catch (const Error& e) {
                sys[key] = ordered_json{{"error", e.what()}};
            }
        }
        tests["pearson"][label] = std::move(sys);
    }
    out.push_back({"stat_tests.json", tests.dump(2) + "\n"});
    return out;
}

std::vector<Artifact> relation_artifacts(const Corpus& corpus) {
    const auto cats_a = corpus.categories(corpus.system_a());
    const auto cats_b = corpus.categories(corpus.system_b());
    std::vector<Artifact> out;
    out.push_back({"relations_intra_" + corpus.system_a() + ".json",
                   to_json_string(relate(cats_a, cats_a, true))});
    out.push_back({"relations_intra_" + corpus.system_b() + ".json",
                   to_json_string(relate(cats_b, cats_b, true))});
    out.push_back({"relations_inter_" + corpus.system_a() + "_" + corpus.system_b() +
                       ".json",
                   to_json_string(relate(cats_a, cats_b, false))});
    out.push_back({"relations_inter_" + corpus.system_b() + "_" + corpus.system_a() +
                       ".json",
                   to_json_string(relate(cats_b, cats_a, false))});
    return out;
}

std::vector<Artifact> sweep_artifacts(const Corpus& corpus, const RunConfig& config) {
    const auto cats_a = corpus.categories(corpus.system_a());
    const auto cats_b = corpus.categories(corpus.system_b());
    std::vector<Artifact> out;
    for (const bool a_to_b : {true, false}) {
        const auto src = a_to_b ? cats_a : cats_b;
        const auto dst = a_to_b ? cats_b : cats_a;
        const std::string& src_label = a_to_b ? corpus.system_a() : corpus.system_b();
        const std::string& dst_label = a_to_b ? corpus.system_b() : corpus.system_a();
        std::string text;
        csv::append_row(text, std::vector<std::string>{"threshold_pct", "fraction"});
        for (const SweepPoint& p : similarity_sweep(src, dst, config.sweep_step))
            csv::append_row(text, std::vector<std::string>{fmt(uint64_t{p.threshold_pct}),
                                                           fmt(p.fraction)});
        out.push_back({"sweep_" + src_label + "_to_" + dst_label + ".csv",
                       std::move(text)});
    }
    return out;
}

std::vector<Artifact> cover_artifacts(const Corpus& corpus, const RunConfig& config) {
    const CoverOptions opts{config.exact_cap, config.node_budget};

    std::string survey_text;
    csv::append_row(survey_text,
                    std::vector<std::string>{"category", "system", "mode", "threshold",
                                             "feasible", "cover_size", "covered",
                                             "target_size", "method", "optimal"});
    for (const SurveyMode mode : {SurveyMode::intra_a, SurveyMode::intra_b,
                                  SurveyMode::a_by_b, SurveyMode::b_by_a}) {
        const bool survey_a = mode == SurveyMode::intra_a || mode == SurveyMode::a_by_b;
        const std::string& label = survey_a ? corpus.system_a() : corpus.system_b();
        for (const double threshold : config.thresholds) {
            for (const auto& [category, r] : cover_survey(corpus, mode, threshold, opts)) {
                csv::append_row(
                    survey_text,
                    std::vector<std::string>{
                        category, label, std::string(to_string(mode)), fmt(threshold),
                        r.feasible ? "true" : "false", fmt(uint64_t{r.chosen.size()}),
                        fmt(r.covered), fmt(r.target_size),
                        std::string(to_string(r.method)),
                        r.optimal ? "true" : "false"});
            }
        }
    }

    std::string meta_text;
    csv::append_row(meta_text,
                    std::vector<std::string>{"direction", "threshold", "feasible",
                                             "cover_size", "covered", "target_size",
                                             "method", "optimal"});
    for (const CoverDirection dir : {CoverDirection::a_by_b, CoverDirection::b_by_a}) {
        for (const double threshold : config.thresholds) {
            const CoverResult r = meta_cover(corpus, dir, threshold, opts);
            csv::append_row(meta_text,
                            std::vector<std::string>{
                                std::string(to_string(dir)), fmt(threshold),
                                r.feasible ? "true" : "false",
                                fmt(uint64_t{r.chosen.size()}), fmt(r.covered),
                                fmt(r.target_size), std::string(to_string(r.method)),
                                r.optimal ? "true" : "false"});
        }
    }

    std::vector<Artifact> out;
    out.push_back({"cover_survey.csv", std::move(survey_text)});
    out.push_back({"meta_cover.csv", std::move(meta_text)});
    return out;
}

Artifact run_summary_artifact(const PipelineData& data, const RunConfig& config,
                              std::string_view command,
                              std::span<const Artifact> artifacts) {
    ordered_json j;
    j["tool"] = "catlas";
    j["command"] = std::string(command);

    ordered_json cfg;
    cfg["input_a"] = config.input_a.string();
    cfg["input_b"] = config.input_b.string();
    cfg["label_a"] = config.label_a;
    cfg["label_b"] = config.label_b;
    cfg["thresholds"] = config.thresholds;
    cfg["sweep_step"] = config.sweep_step;
    cfg["bin_width"] = config.bin_width;
    cfg["exact_cap"] = config.exact_cap;
    cfg["node_budget"] = config.node_budget;
    cfg["small_cutoff"] = config.small_cutoff;
    cfg["large_cutoff"] = config.large_cutoff;
    cfg["seed"] = config.seed;
    j["config"] = std::move(cfg);

    for (const bool side_a : {true, false}) {
        const IngestResult& raw = side_a ? data.raw_a : data.raw_b;
        ordered_json sys;
        sys["rows"] = raw.rows;
        sys["records"] = raw.records.size();
        sys["dropped_inactive"] = raw.dropped_inactive.size();
        j["inputs"][side_a ? config.label_a : config.label_b] = std::move(sys);
    }

    j["matching"] = ordered_json{{"by_issn", data.match_diag.matched_by_issn},
                                 {"by_eissn", data.match_diag.matched_by_eissn},
                                 {"by_name", data.match_diag.matched_by_name},
                                 {"unmatched_a", data.match_diag.unmatched_a.size()},
                                 {"unmatched_b", data.match_diag.unmatched_b.size()}};

    const BuildDiagnostics& diag = data.corpus.diagnostics();
    ordered_json corpus_j;
    corpus_j["journals"] = diag.journals;
    corpus_j["dropped_missing_score"] = diag.dropped_missing_score;
    corpus_j["categories_a"] = diag.stats_a.categories;
    corpus_j["categories_b"] = diag.stats_b.categories;
    corpus_j["dropped_empty_categories_a"] = diag.dropped_empty_categories_a;
    corpus_j["dropped_empty_categories_b"] = diag.dropped_empty_categories_b;
    j["corpus"] = std::move(corpus_j);

    // Seeded sample of unmatched names, a quick scent of what fell out.
    auto sample_names = [&](const std::vector<size_t>& idx,
                            std::span<const JournalRecord> records) {
        std::vector<std::string> names;
        names.reserve(idx.size());
        for (const size_t i : idx)
            names.push_back(records[i].name);
        std::sort(names.begin(), names.end());
        std::mt19937_64 rng(config.seed);
        std::vector<std::string> sampled;
        std::sample(names.begin(), names.end(), std::back_inserter(sampled), 5, rng);
        return sampled;
    };
    j["unmatched_sample_a"] = sample_names(data.match_diag.unmatched_a, data.raw_a.records);
    j["unmatched_sample_b"] = sample_names(data.match_diag.unmatched_b, data.raw_b.records);

    j["kernels"] = simd::active_kernels().name;

    std::vector<std::string> files;
    files.reserve(artifacts.size() + 1);
    for (const Artifact& a : artifacts)
        files.push_back(a.filename);
    files.push_back("run_summary.json");
    j["files"] = files;

    return {"run_summary.json", j.dump(2) + "\n"};
}

void write_artifacts(const std::filesystem::path& out_dir,
                     std::span<const Artifact> artifacts) {
    std::filesystem::create_directories(out_dir);
    for (const Artifact& a : artifacts) {
        std::ofstream out(out_dir / a.filename, std::ios::binary);
        if (!out)
            throw Error("cannot write " + (out_dir / a.filename).string());
        out.write(a.content.data(),
                  static_cast<std::streamsize>(a.content.size()));
    }
}

ReportBundle run_pipeline(const RunConfig& config) {
    const PipelineData data = ingest_inputs(config);

    ReportBundle bundle;
    auto append = [&bundle](std::vector<Artifact> more) {
        for (Artifact& a : more)
            bundle.artifacts.push_back(std::move(a));
    };
    append(ingest_artifacts(data, config));
    append(stats_artifacts(data.corpus, config));
    append(relation_artifacts(data.corpus));
    append(sweep_artifacts(data.corpus, config));
    append(cover_artifacts(data.corpus, config));
    bundle.artifacts.push_back(
        run_summary_artifact(data, config, "report", bundle.artifacts));

    write_artifacts(config.out_dir, bundle.artifacts);
    return bundle;
}

}  // namespace catlas
