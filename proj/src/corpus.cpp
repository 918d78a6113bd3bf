#include "catlas/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "catlas/csv.hpp"
#include "catlas/errors.hpp"

namespace catlas {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::string fold_case(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

NormalizedId normalize_identifier(std::string_view raw, IdKind kind) {
    const std::string trimmed = trim(raw);
    if (trimmed.empty())
        throw InvalidIdentifierError("identifier is empty");

    if (kind == IdKind::name)
        return NormalizedId{fold_case(trimmed), kind};

    std::string value;
    value.reserve(trimmed.size());
    for (const char c : trimmed) {
        if (c == '-')
            continue;
        value += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    size_t first = 0;
    while (first < value.size() && value[first] == '0')
        ++first;
    value.erase(0, first);
    if (value.empty())
        throw InvalidIdentifierError("identifier '" + trimmed +
                                     "' is empty after normalization");
    return NormalizedId{std::move(value), kind};
}

std::string_view to_string(MatchKey k) {
    switch (k) {
    case MatchKey::issn: return "issn";
    case MatchKey::eissn: return "eissn";
    case MatchKey::name: return "name";
    }
    return "?";
}

namespace {

std::optional<std::string> pass_key(const JournalRecord& r, MatchKey pass) {
    switch (pass) {
    case MatchKey::issn:
        if (!r.issn)
            return std::nullopt;
        return normalize_identifier(*r.issn, IdKind::issn).value;
    case MatchKey::eissn:
        if (!r.eissn)
            return std::nullopt;
        return normalize_identifier(*r.eissn, IdKind::eissn).value;
    case MatchKey::name:
        return normalize_identifier(r.name, IdKind::name).value;
    }
    return std::nullopt;
}

void describe_collision(std::ostringstream& out, const JournalRecord& r) {
    out << " [" << r.system << "] \"" << r.name << "\"";
    if (r.issn)
        out << " issn=" << *r.issn;
    if (r.eissn)
        out << " eissn=" << *r.eissn;
}

}  // namespace

std::pair<std::vector<MatchedJournal>, MatchDiagnostics>
match_journals(std::span<const JournalRecord> records_a,
               std::span<const JournalRecord> records_b) {
    std::vector<bool> done_a(records_a.size(), false), done_b(records_b.size(), false);
    std::vector<std::pair<size_t, size_t>> pairs;  // (idx_a, idx_b)
    std::vector<MatchKey> pair_key;
    MatchDiagnostics diag;

    for (const MatchKey pass : {MatchKey::issn, MatchKey::eissn, MatchKey::name}) {
        std::map<std::string, std::vector<size_t>> keys_a, keys_b;
        for (size_t i = 0; i < records_a.size(); ++i)
            if (!done_a[i])
                if (auto k = pass_key(records_a[i], pass))
                    keys_a[*k].push_back(i);
        for (size_t i = 0; i < records_b.size(); ++i)
            if (!done_b[i])
                if (auto k = pass_key(records_b[i], pass))
                    keys_b[*k].push_back(i);

        std::ostringstream ambiguous;
        size_t n_ambiguous = 0;
        for (const auto& [key, ia] : keys_a) {
            const auto itb = keys_b.find(key);
            if (itb == keys_b.end())
                continue;
            const auto& ib = itb->second;
            if (ia.size() > 1 || ib.size() > 1) {
                ++n_ambiguous;
                ambiguous << "\n  " << to_string(pass) << " key '" << key << "':";
                for (const size_t i : ia)
                    describe_collision(ambiguous, records_a[i]);
                for (const size_t i : ib)
                    describe_collision(ambiguous, records_b[i]);
                continue;
            }
            done_a[ia[0]] = true;
            done_b[ib[0]] = true;
            pairs.emplace_back(ia[0], ib[0]);
            pair_key.push_back(pass);
        }
        if (n_ambiguous > 0)
            throw AmbiguousMatchError("ambiguous " + std::string(to_string(pass)) +
                                      " match for " + std::to_string(n_ambiguous) +
                                      " key(s):" + ambiguous.str());

        switch (pass) {
        case MatchKey::issn: diag.matched_by_issn = pairs.size(); break;
        case MatchKey::eissn:
            diag.matched_by_eissn = pairs.size() - diag.matched_by_issn;
            break;
        case MatchKey::name:
            diag.matched_by_name =
                pairs.size() - diag.matched_by_issn - diag.matched_by_eissn;
            break;
        }
    }

    for (size_t i = 0; i < records_a.size(); ++i)
        if (!done_a[i])
            diag.unmatched_a.push_back(i);
    for (size_t i = 0; i < records_b.size(); ++i)
        if (!done_b[i])
            diag.unmatched_b.push_back(i);

    // Deterministic output order, independent of input permutation.
    std::vector<size_t> order(pairs.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    auto sort_key = [&](size_t i) {
        const JournalRecord& a = records_a[pairs[i].first];
        const JournalRecord& b = records_b[pairs[i].second];
        return std::make_tuple(fold_case(a.name), a.issn.value_or(""),
                               a.eissn.value_or(""), fold_case(b.name));
    };
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return sort_key(x) < sort_key(y); });

    std::vector<MatchedJournal> out;
    out.reserve(pairs.size());
    for (const size_t i : order) {
        MatchedJournal m;
        m.corpus_id = static_cast<uint32_t>(out.size());
        m.a = records_a[pairs[i].first];
        m.b = records_b[pairs[i].second];
        m.matched_by = pair_key[i];
        out.push_back(std::move(m));
    }
    return {std::move(out), std::move(diag)};
}

namespace {

void check_record_invariants(const JournalRecord& r) {
    if (r.categories.empty())
        throw Error("record \"" + r.name + "\" (" + r.system + ") has no categories");
    std::set<std::string> seen(r.categories.begin(), r.categories.end());
    if (seen.size() != r.categories.size())
        throw Error("record \"" + r.name + "\" (" + r.system +
                    ") has duplicate categories");
    if (r.score && *r.score < 0.0)
        throw Error("record \"" + r.name + "\" (" + r.system + ") has negative score");
}

std::vector<Category> build_categories(const std::vector<MatchedJournal>& journals,
                                       bool side_a, const std::string& label,
                                       std::vector<uint32_t>& cat_counts) {
    const auto n = static_cast<uint32_t>(journals.size());
    std::map<std::string, BitVec> members;
    for (const MatchedJournal& j : journals) {
        const JournalRecord& r = side_a ? j.a : j.b;
        for (const std::string& cat : r.categories) {
            auto [it, inserted] = members.try_emplace(cat, n);
            it->second.set(j.corpus_id);
            ++cat_counts[j.corpus_id];
        }
    }
    std::vector<Category> out;
    out.reserve(members.size());
    for (auto& [name, bits] : members) {
        const uint64_t size = bits.count();
        out.push_back(Category{label, name, std::move(bits), size});
    }
    return out;  // std::map iteration gives name order
}

SystemStats stats_for(const std::vector<Category>& cats,
                      const std::vector<uint32_t>& cat_counts) {
    SystemStats s;
    s.categories = cats.size();
    std::vector<double> sizes;
    sizes.reserve(cats.size());
    for (const Category& c : cats)
        sizes.push_back(static_cast<double>(c.size));
    std::vector<double> counts;
    counts.reserve(cat_counts.size());
    for (const uint32_t c : cat_counts)
        counts.push_back(static_cast<double>(c));
    s.journals_per_category = stats::describe(sizes);
    s.categories_per_journal = stats::describe(counts);
    return s;
}

}  // namespace

Corpus build_corpus(std::vector<MatchedJournal> matches) {
    Corpus corpus;
    corpus.diag_.matches_in = matches.size();

    std::set<std::string> named_a, named_b;
    for (MatchedJournal& m : matches) {
        check_record_invariants(m.a);
        check_record_invariants(m.b);
        named_a.insert(m.a.categories.begin(), m.a.categories.end());
        named_b.insert(m.b.categories.begin(), m.b.categories.end());
        if (!m.a.score || !m.b.score) {
            ++corpus.diag_.dropped_missing_score;
            continue;
        }
        m.corpus_id = static_cast<uint32_t>(corpus.journals_.size());
        corpus.journals_.push_back(std::move(m));
    }
    if (corpus.journals_.empty())
        throw EmptyCorpusError("no scored matched journals; corpus is empty");

    corpus.label_a_ = corpus.journals_.front().a.system;
    corpus.label_b_ = corpus.journals_.front().b.system;
    for (const MatchedJournal& j : corpus.journals_) {
        if (j.a.system != corpus.label_a_ || j.b.system != corpus.label_b_)
            throw Error("inconsistent system labels across matched journals");
    }
    if (corpus.label_a_ == corpus.label_b_)
        throw Error("the two systems must carry distinct labels");

    const uint32_t n = corpus.journal_count();
    corpus.scores_a_.resize(n);
    corpus.scores_b_.resize(n);
    for (const MatchedJournal& j : corpus.journals_) {
        corpus.scores_a_[j.corpus_id] = *j.a.score;
        corpus.scores_b_[j.corpus_id] = *j.b.score;
    }
    corpus.cat_count_a_.assign(n, 0);
    corpus.cat_count_b_.assign(n, 0);
    corpus.cats_a_ =
        build_categories(corpus.journals_, true, corpus.label_a_, corpus.cat_count_a_);
    corpus.cats_b_ =
        build_categories(corpus.journals_, false, corpus.label_b_, corpus.cat_count_b_);

    // Categories named only on score-dropped pairs end up with no members.
    auto list_dropped = [](const std::set<std::string>& named,
                           const std::vector<Category>& kept) {
        std::set<std::string> kept_names;
        for (const Category& c : kept)
            kept_names.insert(c.name);
        std::vector<std::string> dropped;
        for (const std::string& name : named)
            if (!kept_names.contains(name))
                dropped.push_back(name);
        return dropped;
    };
    corpus.diag_.dropped_empty_categories_a = list_dropped(named_a, corpus.cats_a_);
    corpus.diag_.dropped_empty_categories_b = list_dropped(named_b, corpus.cats_b_);

    corpus.diag_.journals = n;
    corpus.diag_.stats_a = stats_for(corpus.cats_a_, corpus.cat_count_a_);
    corpus.diag_.stats_b = stats_for(corpus.cats_b_, corpus.cat_count_b_);
    return corpus;
}

std::span<const Category> Corpus::categories(std::string_view system) const {
    if (system == label_a_)
        return cats_a_;
    if (system == label_b_)
        return cats_b_;
    throw Error("unknown system label: " + std::string(system));
}

std::span<const double> Corpus::scores(std::string_view system) const {
    if (system == label_a_)
        return scores_a_;
    if (system == label_b_)
        return scores_b_;
    throw Error("unknown system label: " + std::string(system));
}

std::span<const uint32_t> Corpus::category_counts(std::string_view system) const {
    if (system == label_a_)
        return cat_count_a_;
    if (system == label_b_)
        return cat_count_b_;
    throw Error("unknown system label: " + std::string(system));
}

bool Corpus::is_system_a(std::string_view system) const {
    if (system == label_a_)
        return true;
    if (system == label_b_)
        return false;
    throw Error("unknown system label: " + std::string(system));
}

SystemStats corpus_stats(const Corpus& corpus, std::string_view system) {
    return corpus.is_system_a(system) ? corpus.diagnostics().stats_a
                                      : corpus.diagnostics().stats_b;
}

namespace {

std::optional<double> parse_score(const std::string& cell, size_t row) {
    const std::string s = trim(cell);
    if (s.empty())
        return std::nullopt;
    size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("row " + std::to_string(row) + ": bad score '" + s + "'");
    }
    if (used != s.size())
        throw ParseError("row " + std::to_string(row) + ": bad score '" + s + "'");
    if (value < 0.0)
        throw ParseError("row " + std::to_string(row) + ": negative score");
    return value;
}

bool parse_active(const std::string& cell, size_t row) {
    const std::string s = fold_case(trim(cell));
    if (s.empty() || s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    throw ParseError("row " + std::to_string(row) + ": bad active flag '" + cell + "'");
}

std::vector<std::string> parse_categories(const std::string& cell, size_t row) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= cell.size()) {
        const size_t sep = cell.find(';', start);
        const size_t end = sep == std::string::npos ? cell.size() : sep;
        std::string part = trim(std::string_view(cell).substr(start, end - start));
        if (!part.empty())
            out.push_back(std::move(part));
        if (sep == std::string::npos)
            break;
        start = sep + 1;
    }
    if (out.empty())
        throw ParseError("row " + std::to_string(row) + ": no categories");
    std::set<std::string> seen(out.begin(), out.end());
    if (seen.size() != out.size())
        throw ParseError("row " + std::to_string(row) + ": duplicate category");
    return out;
}

}  // namespace

IngestResult read_journal_table(const std::filesystem::path& path,
                                std::string_view system_label) {
    const auto rows = csv::parse_file(path);
    if (rows.empty())
        throw ParseError(path.string() + ": no header row");

    std::map<std::string, size_t> columns;
    for (size_t i = 0; i < rows[0].size(); ++i)
        columns[fold_case(trim(rows[0][i]))] = i;
    auto require = [&](const char* name) {
        const auto it = columns.find(name);
        if (it == columns.end())
            throw ParseError(path.string() + ": missing column '" + name + "'");
        return it->second;
    };
    const size_t col_name = require("name");
    const size_t col_issn = require("issn");
    const size_t col_eissn = require("eissn");
    const size_t col_categories = require("categories");
    const size_t col_score = require("score");
    const auto it_active = columns.find("active");

    auto cell = [&](const csv::Row& row, size_t col) -> std::string {
        return col < row.size() ? row[col] : std::string{};
    };

    IngestResult result;
    for (size_t r = 1; r < rows.size(); ++r) {
        const csv::Row& row = rows[r];
        const size_t rowno = r + 1;
        ++result.rows;

        JournalRecord rec;
        rec.system = std::string(system_label);
        rec.name = trim(cell(row, col_name));
        if (rec.name.empty())
            throw ParseError(path.string() + ": row " + std::to_string(rowno) +
                             ": empty name");
        const std::string issn = trim(cell(row, col_issn));
        if (!issn.empty())
            rec.issn = issn;
        const std::string eissn = trim(cell(row, col_eissn));
        if (!eissn.empty())
            rec.eissn = eissn;
        try {
            rec.categories = parse_categories(cell(row, col_categories), rowno);
            rec.score = parse_score(cell(row, col_score), rowno);
            if (it_active != columns.end())
                rec.active = parse_active(cell(row, it_active->second), rowno);
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what());
        }

        if (rec.active)
            result.records.push_back(std::move(rec));
        else
            result.dropped_inactive.push_back(std::move(rec));
    }
    return result;
}

}  // namespace catlas
