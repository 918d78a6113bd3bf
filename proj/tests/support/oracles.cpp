#include "support/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace testsupport {

std::optional<size_t>
exhaustive_min_cover(const std::vector<std::vector<uint32_t>>& candidates,
                     uint64_t required) {
    const size_t k = candidates.size();
    if (k > 20)
        throw std::logic_error("oracle limited to 20 candidates");
    std::optional<size_t> best;
    for (uint32_t mask = 1; mask < (1u << k); ++mask) {
        const auto size = static_cast<size_t>(std::popcount(mask));
        if (best && size >= *best)
            continue;
        std::set<uint32_t> covered;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1u << i))
                covered.insert(candidates[i].begin(), candidates[i].end());
        if (covered.size() >= required)
            best = size;
    }
    return best;
}

MmVar two_pass_mm_var(std::span<const double> values) {
    MmVar out;
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    out.mm = hi - lo;
    double sum = 0.0;
    for (const double v : values)
        sum += v;
    const double mu = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (const double v : values)
        ss += (v - mu) * (v - mu);
    out.var = ss / static_cast<double>(values.size());
    return out;
}

std::vector<double> count_based_percentiles(std::span<const double> scores) {
    const double n = static_cast<double>(scores.size());
    std::vector<double> out;
    out.reserve(scores.size());
    for (const double x : scores) {
        size_t less = 0, equal = 0;
        for (const double y : scores) {
            if (y < x)
                ++less;
            else if (y == x)
                ++equal;
        }
        const double rank_asc =
            static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
        out.push_back((rank_asc - 0.5) / n * 100.0);
    }
    return out;
}

double exact_wilcoxon_p(std::span<const std::pair<long, long>> pairs) {
    std::vector<double> abs_diff;
    std::vector<int> sign;
    for (const auto& [a, b] : pairs) {
        const long d = b - a;
        if (d == 0)
            continue;
        abs_diff.push_back(std::fabs(static_cast<double>(d)));
        sign.push_back(d > 0 ? 1 : -1);
    }
    const size_t n = abs_diff.size();
    if (n == 0)
        throw std::logic_error("no non-zero differences");
    if (n > 20)
        throw std::logic_error("oracle limited to 20 differences");

    // Tie-averaged ascending ranks of |d|, computed by counting.
    std::vector<double> ranks(n);
    for (size_t i = 0; i < n; ++i) {
        size_t less = 0, equal = 0;
        for (size_t j = 0; j < n; ++j) {
            if (abs_diff[j] < abs_diff[i])
                ++less;
            else if (abs_diff[j] == abs_diff[i])
                ++equal;
        }
        ranks[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }

    double w_plus = 0.0, total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        total += ranks[i];
        if (sign[i] > 0)
            w_plus += ranks[i];
    }
    const double w_obs = std::min(w_plus, total - w_plus);

    uint64_t hits = 0;
    const uint64_t all = uint64_t{1} << n;
    for (uint64_t mask = 0; mask < all; ++mask) {
        double w = 0.0;
        for (size_t i = 0; i < n; ++i)
            if (mask & (uint64_t{1} << i))
                w += ranks[i];
        if (w <= w_obs + 1e-9)
            ++hits;
    }
    const double p = 2.0 * static_cast<double>(hits) / static_cast<double>(all);
    return std::min(p, 1.0);
}

}  // namespace testsupport
