#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace paretofam {

enum class BinMode { log, linear };

/// Which density reading empirical_mode maximizes. The paper's most-probable
/// statements mix the two: (2-alpha)^-2 for N_e is the argmax of the plain
/// density, while the typical Y_2 scale reads off a log-abscissa histogram.
enum class ModeConvention { linear_density, log_density };

/// Binned density estimate. `total` counts every accumulated sample,
/// including the out-of-range tallies, so sum(density * width) equals
/// 1 - underflow_fraction - overflow_fraction exactly.
struct HistogramGrid {
    std::vector<double> edges;          // strictly increasing, size bins+1
    std::vector<std::uint64_t> counts;  // per-bin
    std::uint64_t total = 0;
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;
    BinMode mode = BinMode::log;

    static HistogramGrid make_log(double lo, double hi, int bins_per_decade);
    static HistogramGrid make_linear(double lo, double hi, int bins);

    std::size_t size() const { return counts.size(); }
    double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
    double center(std::size_t i) const;  // geometric center for log grids

    /// Left-closed binning: a sample equal to a bin's left edge lands in it.
    /// NaN samples are rejected.
    void accumulate(double sample);

    /// Merge of an independently filled grid with identical edges
    /// (associative and commutative).
    void merge(const HistogramGrid& other);

    /// counts[i] / (total * width(i)); zero when empty.
    double density(std::size_t i) const;
};

/// Center of the maximal-density bin; ties break toward the smaller
/// abscissa. Requires a populated grid.
double empirical_mode(const HistogramGrid& grid,
                      ModeConvention convention = ModeConvention::linear_density);

/// Per-bin mean and 95% band of paired samples (Fig. 2 style).
struct BinnedCurve {
    std::vector<double> centers;
    std::vector<double> means;
    std::vector<double> q_lo;   // 2.5% nearest-rank
    std::vector<double> q_hi;   // 97.5% nearest-rank
    std::vector<std::uint64_t> counts;
    std::vector<char> occupied;
    std::vector<char> low_confidence;  // fewer than 20 samples
};

/// Bins y_samples by their paired x_samples over `edges`. Empty bins stay
/// flagged unoccupied rather than reporting zeros.
BinnedCurve binned_conditional(std::span<const double> y_samples,
                               std::span<const double> x_samples,
                               const std::vector<double>& edges);

/// Nearest-rank quantile of an unsorted copy of `values`; p in (0, 1].
double nearest_rank_quantile(std::vector<double> values, double p);

/// Ordinary least squares of ln(statistic) on ln(n).
struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    std::vector<std::pair<double, double>> log_points;
};

ScalingFit fit_power_law(std::span<const std::pair<double, double>> points);

}  // namespace paretofam
