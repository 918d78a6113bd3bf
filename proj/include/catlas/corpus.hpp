#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catlas/bitvec.hpp"
#include "catlas/stats.hpp"

namespace catlas {

enum class IdKind { issn, eissn, name };

struct NormalizedId {
    std::string value;
    IdKind kind = IdKind::issn;

    friend bool operator==(const NormalizedId&, const NormalizedId&) = default;
};

// Dashes removed and leading zeros stripped for issn/eissn; names are
// trimmed and case-folded. Throws InvalidIdentifierError when nothing
// survives normalization.
NormalizedId normalize_identifier(std::string_view raw, IdKind kind);

// One row of one system's journal table.
struct JournalRecord {
    std::string system;
    std::string name;
    std::optional<std::string> issn;
    std::optional<std::string> eissn;
    std::vector<std::string> categories;  // non-empty, no duplicates
    std::optional<double> score;          // >= 0 when present
    bool active = true;
};

enum class MatchKey { issn, eissn, name };

std::string_view to_string(MatchKey k);

// A cross-system pair unified under one corpus identity. corpus_id values
// are dense indices assigned in a deterministic record order.
struct MatchedJournal {
    uint32_t corpus_id = 0;
    JournalRecord a;
    JournalRecord b;
    MatchKey matched_by = MatchKey::issn;
};

struct MatchDiagnostics {
    size_t matched_by_issn = 0;
    size_t matched_by_eissn = 0;
    size_t matched_by_name = 0;
    // Indices into the input spans.
    std::vector<size_t> unmatched_a;
    std::vector<size_t> unmatched_b;
};

// Three passes: normalized ISSN, then e-ISSN among the unmatched, then
// case-folded name among the unmatched. A normalized key held by two or
// more records on either side, with a counterpart present on the other
// side, raises AmbiguousMatchError instead of guessing.
std::pair<std::vector<MatchedJournal>, MatchDiagnostics>
match_journals(std::span<const JournalRecord> records_a,
               std::span<const JournalRecord> records_b);

// A named set of journals in one system, over the corpus id universe.
struct Category {
    std::string system;
    std::string name;
    BitVec members;
    uint64_t size = 0;  // cached members.count()
};

struct SystemStats {
    size_t categories = 0;
    DescriptiveStats journals_per_category;
    DescriptiveStats categories_per_journal;
};

struct BuildDiagnostics {
    size_t matches_in = 0;
    size_t dropped_missing_score = 0;
    size_t journals = 0;
    std::vector<std::string> dropped_empty_categories_a;
    std::vector<std::string> dropped_empty_categories_b;
    SystemStats stats_a;
    SystemStats stats_b;
};

class Corpus {
public:
    const std::string& system_a() const { return label_a_; }
    const std::string& system_b() const { return label_b_; }

    const std::vector<MatchedJournal>& journals() const { return journals_; }
    uint32_t journal_count() const { return static_cast<uint32_t>(journals_.size()); }

    // Name-sorted. Throws Error on an unknown label.
    std::span<const Category> categories(std::string_view system) const;

    // Scores and per-journal category counts indexed by corpus_id.
    std::span<const double> scores(std::string_view system) const;
    std::span<const uint32_t> category_counts(std::string_view system) const;

    const BuildDiagnostics& diagnostics() const { return diag_; }

    bool is_system_a(std::string_view system) const;

private:
    friend Corpus build_corpus(std::vector<MatchedJournal> matches);

    std::string label_a_, label_b_;
    std::vector<MatchedJournal> journals_;
    std::vector<Category> cats_a_, cats_b_;
    std::vector<double> scores_a_, scores_b_;
    std::vector<uint32_t> cat_count_a_, cat_count_b_;
    BuildDiagnostics diag_;
};

// Drops pairs lacking a score on either side, re-indexes corpus ids
// densely, materializes per-system categories and drops empty ones.
// Throws EmptyCorpusError when nothing survives.
Corpus build_corpus(std::vector<MatchedJournal> matches);

// Table-level descriptive statistics for one system.
SystemStats corpus_stats(const Corpus& corpus, std::string_view system);

struct IngestResult {
    std::vector<JournalRecord> records;
    std::vector<JournalRecord> dropped_inactive;
    size_t rows = 0;  // data rows parsed, before the inactive filter
};

// Reads a delimited journal table (header row with columns name, issn,
// eissn, categories, score and optional active) and filters inactive
// records when the active column is present.
IngestResult read_journal_table(const std::filesystem::path& path,
                                std::string_view system_label);

}  // namespace catlas
