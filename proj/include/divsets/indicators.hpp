#pragma once

#include "divsets/encoding.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace divsets {

// Affine map of raw fitness onto [0,1]^2, clamped. An axis with hi == lo maps values >= hi to 1
// and the rest to 0.
struct NormalizationFrame {
    enum class Mode { Extreme, Aggregated };

    double f1_lo = 0.0;
    double f1_hi = 1.0;
    double f2_lo = 0.0;
    double f2_hi = 1.0;
    Mode mode = Mode::Extreme;

    [[nodiscard]] FitnessVector normalize(const FitnessVector& raw) const noexcept;
    [[nodiscard]] std::vector<FitnessVector> normalize(std::span<const FitnessVector> raw) const;
};

// [0, opt] x [0, diversity bound].
[[nodiscard]] NormalizationFrame extreme_frame(double f1_hi, double f2_hi);

// [0, max f1] x [0, max f2] over the pooled reference front.
[[nodiscard]] NormalizationFrame aggregated_frame(std::span<const FitnessVector> reference);

// Area dominated by the front and dominating `ref` (maximization). Points below the reference on
// an axis are clamped onto it.
[[nodiscard]] double hypervolume_2d(std::span<const FitnessVector> front, FitnessVector ref = {0.0, 0.0});

[[nodiscard]] std::size_t count_below_reference(std::span<const FitnessVector> front, FitnessVector ref = {0.0, 0.0});

// IGD+ for maximization: mean over reference points z of the smallest
// sqrt(sum_i max(z_i - a_i, 0)^2) over front points a.
[[nodiscard]] double igd_plus(std::span<const FitnessVector> front, std::span<const FitnessVector> reference);

struct RunIndicators {
    double igd_plus = 0.0;
    double hypervolume = 0.0;
    double igd_plus_star = 0.0;
    double hypervolume_star = 0.0;
    std::size_t count = 0;
};

// The four indicators of one run's feasible front. An empty front is scored as the single
// point at the origin of the normalized space.
[[nodiscard]] RunIndicators run_indicators(std::span<const FitnessVector> front, const NormalizationFrame& extreme,
    const NormalizationFrame& aggregated, std::span<const FitnessVector> aggregated_reference_normalized,
    std::size_t front_size);

struct AlgorithmSummary {
    RunIndicators median; // count field unused, see median_count
    double median_count = 0.0;
    std::size_t runs = 0;
};

// Medians per algorithm and, for two algorithms with paired runs, Wilcoxon significance per
// indicator (IGD+, HV, IGD+*, HV*).
struct IndicatorSummary {
    std::vector<AlgorithmSummary> per_algorithm;
    std::array<bool, 4> significant{};
    std::array<std::optional<double>, 4> p_values{};
};

[[nodiscard]] IndicatorSummary summarize(std::span<const std::vector<RunIndicators>> runs_per_algorithm, double alpha = 0.01);

} // namespace divsets
