#include "divsets/stats.hpp"

#include "divsets/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace divsets {

namespace {

    constexpr std::size_t exact_limit = 25;

    struct SignedRanks {
        std::vector<double> ranks; // of |d|, ties averaged
        std::vector<bool> positive;
        double tie_term = 0.0; // sum over tie groups of (t^3 - t)
    };

    SignedRanks rank_differences(std::span<const double> a, std::span<const double> b)
    {
        if (a.size() != b.size()) {
            throw InvalidInput("Wilcoxon test needs paired samples of equal length");
        }
        if (a.size() < 5) {
            throw InvalidInput("Wilcoxon test needs at least 5 pairs");
        }
        std::vector<double> diff;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            if (d != 0.0) {
                diff.push_back(d);
            }
        }
        std::vector<std::size_t> order(diff.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return std::abs(diff[x]) < std::abs(diff[y]); });
        SignedRanks sr;
        sr.ranks.resize(diff.size());
        sr.positive.resize(diff.size());
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i;
            while (j < order.size() && std::abs(diff[order[j]]) == std::abs(diff[order[i]])) {
                ++j;
            }
            const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
            for (std::size_t k = i; k < j; ++k) {
                sr.ranks[order[k]] = avg;
            }
            const auto t = static_cast<double>(j - i);
            sr.tie_term += t * t * t - t;
            i = j;
        }
        for (std::size_t i = 0; i < diff.size(); ++i) {
            sr.positive[i] = diff[i] > 0.0;
        }
        return sr;
    }

    double positive_rank_sum(const SignedRanks& sr)
    {
        double w = 0.0;
        for (std::size_t i = 0; i < sr.ranks.size(); ++i) {
            if (sr.positive[i]) {
                w += sr.ranks[i];
            }
        }
        return w;
    }

    WilcoxonResult exact_test(const SignedRanks& sr, double alpha)
    {
        WilcoxonResult res;
        res.exact = true;
        res.pairs_used = sr.ranks.size();
        res.statistic = positive_rank_sum(sr);
        if (sr.ranks.empty()) {
            return res;
        }
        // Ranks are multiples of 1/2; count sign assignments per doubled rank sum.
        std::vector<int> doubled;
        int total = 0;
        for (double r : sr.ranks) {
            doubled.push_back(static_cast<int>(std::lround(2.0 * r)));
            total += doubled.back();
        }
        std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
        ways[0] = 1.0;
        for (int d : doubled) {
            for (int s = total; s >= d; --s) {
                ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - d)];
            }
        }
        const double all = std::ldexp(1.0, static_cast<int>(doubled.size()));
        const auto w = static_cast<int>(std::lround(2.0 * res.statistic));
        double lower = 0.0;
        double upper = 0.0;
        for (int s = 0; s <= total; ++s) {
            if (s <= w) {
                lower += ways[static_cast<std::size_t>(s)];
            }
            if (s >= w) {
                upper += ways[static_cast<std::size_t>(s)];
            }
        }
        res.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all);
        res.significant = res.p_value < alpha;
        return res;
    }

    WilcoxonResult normal_test(const SignedRanks& sr, double alpha)
    {
        WilcoxonResult res;
        res.pairs_used = sr.ranks.size();
        res.statistic = positive_rank_sum(sr);
        const auto n = static_cast<double>(sr.ranks.size());
        if (sr.ranks.empty()) {
            return res;
        }
        const double mean = n * (n + 1.0) / 4.0;
        const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - sr.tie_term / 48.0;
        if (var <= 0.0) {
            return res;
        }
        const double dev = std::max(0.0, std::abs(res.statistic - mean) - 0.5);
        const double z = dev / std::sqrt(var);
        res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
        res.significant = res.p_value < alpha;
        return res;
    }

} // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, double alpha)
{
    const auto sr = rank_differences(a, b);
    return sr.ranks.size() <= exact_limit ? exact_test(sr, alpha) : normal_test(sr, alpha);
}

WilcoxonResult wilcoxon_signed_rank_exact(std::span<const double> a, std::span<const double> b, double alpha)
{
    return exact_test(rank_differences(a, b), alpha);
}

WilcoxonResult wilcoxon_signed_rank_normal(std::span<const double> a, std::span<const double> b, double alpha)
{
    return normal_test(rank_differences(a, b), alpha);
}

double median(std::span<const double> values)
{
    if (values.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const auto mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

} // namespace divsets
