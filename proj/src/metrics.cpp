#include "catlas/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "catlas/errors.hpp"
#include "catlas/stats.hpp"

namespace catlas {

std::vector<PercentileRanking> percentile_ranks(const Category& category,
                                                std::span<const double> scores) {
    const std::vector<uint32_t> ids = category.members.indices();
    if (ids.empty())
        throw Error("category '" + category.name + "' has no members");

    std::vector<double> member_scores;
    member_scores.reserve(ids.size());
    for (const uint32_t id : ids) {
        if (id >= scores.size() || std::isnan(scores[id]))
            throw Error("category '" + category.name + "': member " +
                        std::to_string(id) + " has no score");
        member_scores.push_back(scores[id]);
    }

    // Ascending tie-averaged rank R_asc relates to the descending rank via
    // R = N + 1 - R_asc, so (N - R + 0.5)/N == (R_asc - 0.5)/N.
    const std::vector<double> asc = stats::average_ranks(member_scores);
    const double n = static_cast<double>(ids.size());
    std::vector<PercentileRanking> out;
    out.reserve(ids.size());
    for (size_t i = 0; i < ids.size(); ++i)
        out.push_back({ids[i], (asc[i] - 0.5) / n * 100.0});
    return out;
}

RankDispersion dispersion(uint32_t journal, std::span<const double> percentiles) {
    if (percentiles.empty())
        throw Error("dispersion needs at least one percentile");

    RankDispersion d;
    d.journal = journal;
    d.category_count = static_cast<uint32_t>(percentiles.size());

    double lo = percentiles[0], hi = percentiles[0];
    // Welford's online mean/variance.
    double mean = 0.0, m2 = 0.0;
    size_t k = 0;
    for (const double p : percentiles) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
        ++k;
        const double delta = p - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (p - mean);
    }
    d.mm = hi - lo;
    d.var = m2 / static_cast<double>(k);
    d.mean_percentile = mean;
    return d;
}

std::vector<RankDispersion> dispersion_table(const Corpus& corpus,
                                             std::string_view system) {
    const auto scores = corpus.scores(system);
    std::vector<std::vector<double>> per_journal(corpus.journal_count());
    for (const Category& cat : corpus.categories(system))
        for (const PercentileRanking& pr : percentile_ranks(cat, scores))
            per_journal[pr.journal].push_back(pr.percentile);

    std::vector<RankDispersion> out;
    out.reserve(per_journal.size());
    for (uint32_t id = 0; id < per_journal.size(); ++id)
        out.push_back(dispersion(id, per_journal[id]));
    return out;
}

std::vector<ScoreBucketStats> score_buckets(const Corpus& corpus,
                                            std::string_view system) {
    const auto scores = corpus.scores(system);
    const auto counts = corpus.category_counts(system);

    std::map<uint32_t, std::vector<double>> groups;
    for (uint32_t id = 0; id < corpus.journal_count(); ++id)
        groups[counts[id]].push_back(scores[id]);

    std::vector<ScoreBucketStats> out;
    out.reserve(groups.size());
    for (auto& [count, values] : groups) {
        std::sort(values.begin(), values.end());
        ScoreBucketStats s;
        s.category_count = count;
        s.n = values.size();
        s.min = values.front();
        s.max = values.back();
        s.q1 = stats::quantile_sorted(values, 0.25);
        s.median = stats::quantile_sorted(values, 0.5);
        s.q3 = stats::quantile_sorted(values, 0.75);
        s.mean = stats::mean(values);
        s.sd = stats::population_sd(values);
        out.push_back(s);
    }
    return out;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error("pearson: length mismatch");
    const size_t n = x.size();
    if (n < 3)
        throw Error("pearson: need at least 3 observations");

    const double mx = stats::mean(x);
    const double my = stats::mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateStatError("pearson: constant input vector");

    double r = sxy / std::sqrt(sxx * syy);
    r = std::clamp(r, -1.0, 1.0);

    const double df = static_cast<double>(n - 2);
    const double denom = 1.0 - r * r;
    double p = 0.0;
    if (denom > 0.0)
        p = stats::t_two_sided_p(r * std::sqrt(df / denom), df);
    return Correlation{r, p};
}

WilcoxonResult wilcoxon_signed_rank(std::span<const std::pair<long, long>> pairs) {
    std::vector<double> abs_diff;
    std::vector<int> sign;
    abs_diff.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        const long d = b - a;
        if (d == 0)
            continue;
        abs_diff.push_back(std::fabs(static_cast<double>(d)));
        sign.push_back(d > 0 ? 1 : -1);
    }
    if (abs_diff.empty())
        throw DegenerateStatError("wilcoxon: all differences are zero");

    const size_t n = abs_diff.size();
    const std::vector<double> ranks = stats::average_ranks(abs_diff);
    double w_plus = 0.0;
    for (size_t i = 0; i < n; ++i)
        if (sign[i] > 0)
            w_plus += ranks[i];
    const double total = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
    const double w = std::min(w_plus, total - w_plus);

    const double dn = static_cast<double>(n);
    const double mu = dn * (dn + 1.0) / 4.0;
    double sigma2 = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0;
    // Tie correction over groups of equal |difference|.
    std::map<double, size_t> tie_groups;
    for (const double v : abs_diff)
        ++tie_groups[v];
    for (const auto& [value, t] : tie_groups) {
        const double td = static_cast<double>(t);
        sigma2 -= (td * td * td - td) / 48.0;
    }

    // W = min(W+, W-) <= mu, so the 0.5 continuity correction moves toward
    // the mean.
    const double z = (w - mu + 0.5) / std::sqrt(sigma2);
    const double p = std::min(1.0, 2.0 * stats::normal_cdf(z));
    return WilcoxonResult{w, p, n};
}

}  // namespace catlas
