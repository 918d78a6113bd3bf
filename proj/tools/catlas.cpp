// catlas: overlap analysis for a pair of journal classification systems.
//
// Subcommands ingest the two journal tables, match records across systems
// and emit the requested analysis files into the output directory. Exit
// codes: 0 ok, 2 usage or missing input, 3 parse error, 4 ambiguous match,
// 5 empty corpus, 1 anything else.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "catlas/errors.hpp"
#include "catlas/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitAmbiguous = 4;
constexpr int kExitEmptyCorpus = 5;

struct Command {
    std::string name;
    std::string description;
};

const Command kCommands[] = {
    {"ingest", "Parse, match and summarize the corpus (table1, diagnostics)"},
    {"stats", "Histograms, size extremes, score buckets, dispersion, tests"},
    {"relations", "Equivalence/subset/intersection reports, intra and inter"},
    {"sweep", "Shared-journal similarity sweep between the two systems"},
    {"cover", "Minimal-cover survey per category plus whole-corpus covers"},
    {"report", "Everything above in one run"},
};

int run(const std::string& command, const catlas::RunConfig& config) {
    using namespace catlas;

    const PipelineData data = ingest_inputs(config);

    std::vector<Artifact> artifacts;
    auto append = [&artifacts](std::vector<Artifact> more) {
        for (Artifact& a : more)
            artifacts.push_back(std::move(a));
    };
    const bool all = command == "report";
    if (all || command == "ingest")
        append(ingest_artifacts(data, config));
    if (all || command == "stats")
        append(stats_artifacts(data.corpus, config));
    if (all || command == "relations")
        append(relation_artifacts(data.corpus));
    if (all || command == "sweep")
        append(sweep_artifacts(data.corpus, config));
    if (all || command == "cover")
        append(cover_artifacts(data.corpus, config));
    artifacts.push_back(run_summary_artifact(data, config, command, artifacts));

    write_artifacts(config.out_dir, artifacts);

    std::cout << "wrote " << artifacts.size() << " file(s) to "
              << config.out_dir.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Journal subject classification overlap analysis"};
    app.require_subcommand(1);

    catlas::RunConfig config;
    std::string command;
    for (const Command& c : kCommands) {
        CLI::App* sub = app.add_subcommand(c.name, c.description);
        sub->add_option("--input-a", config.input_a, "System A journal table (CSV)")
            ->required();
        sub->add_option("--input-b", config.input_b, "System B journal table (CSV)")
            ->required();
        sub->add_option("--out", config.out_dir, "Output directory")->required();
        sub->add_option("--threshold", config.thresholds,
                        "Cover threshold in (0,1]; repeatable")
            ->check(CLI::Range(1e-9, 1.0));
        sub->add_option("--sweep-step", config.sweep_step,
                        "Similarity sweep step in percent; must divide 100");
        sub->add_option("--bin-width", config.bin_width,
                        "Bin width of the journals-per-category histogram");
        sub->add_option("--exact-cap", config.exact_cap,
                        "Max intersecting candidates for the exact cover solver");
        sub->add_option("--small-cutoff", config.small_cutoff,
                        "Category size below which it lists as small");
        sub->add_option("--large-cutoff", config.large_cutoff,
                        "Category size above which it lists as large");
        sub->add_option("--node-budget", config.node_budget,
                        "Search node budget of the exact cover solver");
        sub->add_option("--seed", config.seed, "Seed for sampled diagnostics");
        sub->callback([&command, name = c.name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        return run(command, config);
    } catch (const catlas::InputNotFoundError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const catlas::AmbiguousMatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAmbiguous;
    } catch (const catlas::EmptyCorpusError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmptyCorpus;
    } catch (const catlas::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const catlas::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
