#include "divsets/indicators.hpp"

#include "divsets/dominance.hpp"
#include "divsets/error.hpp"
#include "divsets/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace divsets {

namespace {

    double map_axis(double x, double lo, double hi) noexcept
    {
        if (!(hi > lo)) {
            return x >= hi ? 1.0 : 0.0;
        }
        return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
    }

} // namespace

FitnessVector NormalizationFrame::normalize(const FitnessVector& raw) const noexcept
{
    return {map_axis(raw.f1, f1_lo, f1_hi), map_axis(raw.f2, f2_lo, f2_hi)};
}

std::vector<FitnessVector> NormalizationFrame::normalize(std::span<const FitnessVector> raw) const
{
    std::vector<FitnessVector> out;
    out.reserve(raw.size());
    for (const auto& p : raw) {
        out.push_back(normalize(p));
    }
    return out;
}

NormalizationFrame extreme_frame(double f1_hi, double f2_hi)
{
    return {0.0, f1_hi, 0.0, f2_hi, NormalizationFrame::Mode::Extreme};
}

NormalizationFrame aggregated_frame(std::span<const FitnessVector> reference)
{
    NormalizationFrame frame{0.0, 0.0, 0.0, 0.0, NormalizationFrame::Mode::Aggregated};
    for (const auto& p : reference) {
        frame.f1_hi = std::max(frame.f1_hi, p.f1);
        frame.f2_hi = std::max(frame.f2_hi, p.f2);
    }
    return frame;
}

double hypervolume_2d(std::span<const FitnessVector> front, FitnessVector ref)
{
    std::vector<FitnessVector> pts;
    pts.reserve(front.size());
    for (const auto& p : front) {
        pts.push_back({std::max(p.f1, ref.f1), std::max(p.f2, ref.f2)});
    }
    auto nd = nondominated_filter(pts);
    std::sort(nd.begin(), nd.end(), [](const auto& a, const auto& b) { return a.f1 > b.f1; });
    double area = 0.0;
    double f2_floor = ref.f2;
    for (const auto& p : nd) {
        area += (p.f1 - ref.f1) * (p.f2 - f2_floor);
        f2_floor = p.f2;
    }
    return area;
}

std::size_t count_below_reference(std::span<const FitnessVector> front, FitnessVector ref)
{
    return static_cast<std::size_t>(
        std::count_if(front.begin(), front.end(), [&](const auto& p) { return p.f1 < ref.f1 || p.f2 < ref.f2; }));
}

double igd_plus(std::span<const FitnessVector> front, std::span<const FitnessVector> reference)
{
    if (front.empty() || reference.empty()) {
        throw InvalidInput("IGD+ needs a non-empty front and reference set");
    }
    double total = 0.0;
    for (const auto& z : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : front) {
            const double d1 = std::max(z.f1 - a.f1, 0.0);
            const double d2 = std::max(z.f2 - a.f2, 0.0);
            best = std::min(best, std::sqrt(d1 * d1 + d2 * d2));
        }
        total += best;
    }
    return total / static_cast<double>(reference.size());
}

RunIndicators run_indicators(std::span<const FitnessVector> front, const NormalizationFrame& extreme,
    const NormalizationFrame& aggregated, std::span<const FitnessVector> aggregated_reference_normalized,
    std::size_t front_size)
{
    std::vector<FitnessVector> ext = extreme.normalize(front);
    std::vector<FitnessVector> agg = aggregated.normalize(front);
    if (ext.empty()) {
        ext.push_back({0.0, 0.0});
        agg.push_back({0.0, 0.0});
    }
    const FitnessVector ideal{1.0, 1.0};
    RunIndicators out;
    out.igd_plus = igd_plus(ext, std::span(&ideal, 1));
    out.hypervolume = hypervolume_2d(ext);
    if (aggregated_reference_normalized.empty()) {
        out.igd_plus_star = igd_plus(agg, std::span(&ideal, 1));
    } else {
        out.igd_plus_star = igd_plus(agg, aggregated_reference_normalized);
    }
    out.hypervolume_star = hypervolume_2d(agg);
    out.count = front_size;
    return out;
}

IndicatorSummary summarize(std::span<const std::vector<RunIndicators>> runs_per_algorithm, double alpha)
{
    IndicatorSummary summary;
    using Field = double RunIndicators::*;
    const std::array<Field, 4> fields{
        &RunIndicators::igd_plus, &RunIndicators::hypervolume, &RunIndicators::igd_plus_star, &RunIndicators::hypervolume_star};

    for (const auto& runs : runs_per_algorithm) {
        AlgorithmSummary s;
        s.runs = runs.size();
        std::vector<double> values;
        for (auto field : fields) {
            values.clear();
            for (const auto& r : runs) {
                values.push_back(r.*field);
            }
            s.median.*field = median(values);
        }
        values.clear();
        for (const auto& r : runs) {
            values.push_back(static_cast<double>(r.count));
        }
        s.median_count = median(values);
        summary.per_algorithm.push_back(s);
    }

    if (runs_per_algorithm.size() == 2 && runs_per_algorithm[0].size() == runs_per_algorithm[1].size()
        && runs_per_algorithm[0].size() >= 5) {
        for (std::size_t k = 0; k < fields.size(); ++k) {
            std::vector<double> a;
            std::vector<double> b;
            for (std::size_t i = 0; i < runs_per_algorithm[0].size(); ++i) {
                a.push_back(runs_per_algorithm[0][i].*fields[k]);
                b.push_back(runs_per_algorithm[1][i].*fields[k]);
            }
            const auto test = wilcoxon_signed_rank(a, b, alpha);
            summary.significant[k] = test.significant;
            summary.p_values[k] = test.p_value;
        }
    }
    return summary;
}

} // namespace divsets
