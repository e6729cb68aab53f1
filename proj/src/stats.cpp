#include "paretofam/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paretofam {

HistogramGrid HistogramGrid::make_log(double lo, double hi, int bins_per_decade) {
    if (!(0.0 < lo && lo < hi)) {
        throw std::invalid_argument("HistogramGrid: requires 0 < lo < hi");
    }
    if (bins_per_decade < 1) {
        throw std::invalid_argument("HistogramGrid: bins_per_decade must be >= 1");
    }
    HistogramGrid g;
    g.mode = BinMode::log;
    const double decades = std::log10(hi / lo);
    const int bins = std::max(1, static_cast<int>(std::ceil(decades * bins_per_decade - 1e-9)));
    g.edges.resize(bins + 1);
    const double step = std::log10(hi / lo) / bins;
    for (int i = 0; i <= bins; ++i) {
        g.edges[i] = lo * std::pow(10.0, step * i);
    }
    g.edges.front() = lo;
    g.edges.back() = hi;
    g.counts.assign(bins, 0);
    return g;
}

HistogramGrid HistogramGrid::make_linear(double lo, double hi, int bins) {
    if (!(lo < hi)) {
        throw std::invalid_argument("HistogramGrid: requires lo < hi");
    }
    if (bins < 1) {
        throw std::invalid_argument("HistogramGrid: bins must be >= 1");
    }
    HistogramGrid g;
    g.mode = BinMode::linear;
    g.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) {
        // (hi-lo)*i/bins rather than lo+step*i: keeps round decimals exact
        g.edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
    }
    g.edges.back() = hi;
    g.counts.assign(bins, 0);
    return g;
}

double HistogramGrid::center(std::size_t i) const {
    if (mode == BinMode::log) {
        return std::sqrt(edges[i] * edges[i + 1]);
    }
    return 0.5 * (edges[i] + edges[i + 1]);
}

void HistogramGrid::accumulate(double sample) {
    if (std::isnan(sample)) {
        throw std::domain_error("HistogramGrid::accumulate: NaN sample");
    }
    ++total;
    if (sample < edges.front()) {
        ++underflow;
        return;
    }
    if (sample >= edges.back()) {
        ++overflow;
        return;
    }
    // upper_bound gives the first edge > sample, so equality with a left
    // edge lands in that bin (left-closed convention).
    const auto it = std::upper_bound(edges.begin(), edges.end(), sample);
    const std::size_t idx = static_cast<std::size_t>(it - edges.begin()) - 1;
    ++counts[std::min(idx, counts.size() - 1)];
}

void HistogramGrid::merge(const HistogramGrid& other) {
    if (other.edges != edges) {
        throw std::invalid_argument("HistogramGrid::merge: incompatible edges");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    total += other.total;
    underflow += other.underflow;
    overflow += other.overflow;
}

double HistogramGrid::density(std::size_t i) const {
    if (total == 0) return 0.0;
    return static_cast<double>(counts[i]) /
           (static_cast<double>(total) * width(i));
}

double empirical_mode(const HistogramGrid& grid, ModeConvention convention) {
    if (grid.total == 0 || grid.counts.empty()) {
        throw std::domain_error("empirical_mode: empty histogram");
    }
    std::size_t best = 0;
    double best_value = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double v = grid.density(i);
        if (convention == ModeConvention::log_density) {
            // density per unit ln x: counts / (total * dln x)
            v = static_cast<double>(grid.counts[i]) /
                (static_cast<double>(grid.total) *
                 std::log(grid.edges[i + 1] / grid.edges[i]));
        }
        if (v > best_value) {  // strict: ties keep smaller abscissa
            best_value = v;
            best = i;
        }
    }
    return grid.center(best);
}

double nearest_rank_quantile(std::vector<double> values, double p) {
    if (values.empty()) {
        throw std::domain_error("nearest_rank_quantile: empty sample");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("nearest_rank_quantile: p must be in (0, 1]");
    }
    std::sort(values.begin(), values.end());
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(p * static_cast<double>(values.size())));
    return values[std::max<std::size_t>(rank, 1) - 1];
}

BinnedCurve binned_conditional(std::span<const double> y_samples,
                               std::span<const double> x_samples,
                               const std::vector<double>& edges) {
    if (y_samples.size() != x_samples.size()) {
        throw std::invalid_argument("binned_conditional: paired samples must have equal length");
    }
    if (edges.size() < 2) {
        throw std::invalid_argument("binned_conditional: need at least one bin");
    }
    const std::size_t bins = edges.size() - 1;
    std::vector<std::vector<double>> buckets(bins);
    for (std::size_t i = 0; i < x_samples.size(); ++i) {
        const double x = x_samples[i];
        if (x < edges.front() || x >= edges.back()) continue;
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        const std::size_t idx = static_cast<std::size_t>(it - edges.begin()) - 1;
        buckets[std::min(idx, bins - 1)].push_back(y_samples[i]);
    }

    BinnedCurve curve;
    curve.centers.resize(bins);
    curve.means.assign(bins, 0.0);
    curve.q_lo.assign(bins, 0.0);
    curve.q_hi.assign(bins, 0.0);
    curve.counts.assign(bins, 0);
    curve.occupied.assign(bins, 0);
    curve.low_confidence.assign(bins, 0);
    for (std::size_t b = 0; b < bins; ++b) {
        curve.centers[b] = 0.5 * (edges[b] + edges[b + 1]);
        auto& samples = buckets[b];
        curve.counts[b] = samples.size();
        if (samples.empty()) continue;
        curve.occupied[b] = 1;
        curve.low_confidence[b] = samples.size() < 20 ? 1 : 0;
        double sum = 0.0;
        for (double v : samples) sum += v;
        curve.means[b] = sum / static_cast<double>(samples.size());
        curve.q_lo[b] = nearest_rank_quantile(samples, 0.025);
        curve.q_hi[b] = nearest_rank_quantile(samples, 0.975);
    }
    return curve;
}

ScalingFit fit_power_law(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    }
    ScalingFit fit;
    fit.log_points.reserve(points.size());
    for (const auto& [n, stat] : points) {
        if (!(n > 0.0) || !(stat > 0.0)) {
            throw std::domain_error("fit_power_law: values must be positive");
        }
        fit.log_points.emplace_back(std::log(n), std::log(stat));
    }
    const double m = static_cast<double>(fit.log_points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : fit.log_points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : fit.log_points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) {
        throw std::domain_error("fit_power_law: degenerate abscissae");
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& [x, y] : fit.log_points) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
        ss_tot += (y - my) * (y - my);
    }
    const double dof = m - 2.0;
    fit.stderr_slope = dof > 0.0 ? std::sqrt(ss_res / dof / sxx) : 0.0;
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

}  // namespace paretofam
