#pragma once

#include <cstddef>
#include <span>

namespace divsets {

struct WilcoxonResult {
    double statistic = 0.0; // W+, sum of ranks of positive differences a - b
    double p_value = 1.0; // two-sided
    bool significant = false; // p < alpha
    bool exact = false;
    std::size_t pairs_used = 0; // after dropping zero differences
};

// Two-sided Wilcoxon signed-rank test on paired samples (length >= 5). Zero differences are
// dropped and tied magnitudes share their average rank. Exact null distribution up to 25
// non-zero pairs, tie-corrected normal approximation with continuity correction beyond.
[[nodiscard]] WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, double alpha = 0.01);

// Forces one branch regardless of size; used to cross-check the two.
[[nodiscard]] WilcoxonResult wilcoxon_signed_rank_exact(std::span<const double> a, std::span<const double> b, double alpha = 0.01);
[[nodiscard]] WilcoxonResult wilcoxon_signed_rank_normal(std::span<const double> a, std::span<const double> b, double alpha = 0.01);

// Middle order statistic, or mean of the two middle values for even sizes. Empty input gives NaN.
[[nodiscard]] double median(std::span<const double> values);

} // namespace divsets
