#include "paretofam/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace paretofam {

double pareto_inverse_cdf(double u, double alpha) {
    if (!(u >= 0.0 && u < 1.0)) {
        throw std::domain_error("pareto_inverse_cdf: u must be in [0, 1)");
    }
    if (!(alpha > 0.0)) {
        throw std::domain_error("pareto_inverse_cdf: alpha must be positive");
    }
    return std::pow(1.0 - u, -1.0 / alpha);
}

namespace {

struct StreamAccumulator {
    KahanSum sum;
    KahanSum sum_sq;
    double x1 = 0.0;
    double x2 = 0.0;

    void add(double x) {
        sum.add(x);
        sum_sq.add(x * x);
        if (x > x1) {
            x2 = x1;
            x1 = x;
        } else if (x > x2) {
            x2 = x;
        }
    }

    ReplicateStats finish(std::size_t n) const {
        ReplicateStats s;
        s.n = n;
        s.r_n = sum.value();
        s.sum_sq = sum_sq.value();
        s.x1 = x1;
        s.x2 = x2;
        return s;
    }
};

}  // namespace

ReplicateStats draw_replicate_stats(const AlphaParam& params, RngStream& rng) {
    const double inv_alpha = 1.0 / params.alpha;
    StreamAccumulator acc;
    for (std::size_t i = 0; i < params.n; ++i) {
        acc.add(std::pow(1.0 - rng.next_unit(), -inv_alpha));
    }
    return acc.finish(params.n);
}

PopulationDraw draw_population(const AlphaParam& params, RngStream& rng) {
    PopulationDraw draw;
    draw.x.resize(params.n);
    const double inv_alpha = 1.0 / params.alpha;
    StreamAccumulator acc;
    for (std::size_t i = 0; i < params.n; ++i) {
        const double xi = std::pow(1.0 - rng.next_unit(), -inv_alpha);
        draw.x[i] = xi;
        acc.add(xi);
    }
    draw.stats = acc.finish(params.n);
    draw.r_n = draw.stats.r_n;

    draw.x_sorted = draw.x;
    std::sort(draw.x_sorted.begin(), draw.x_sorted.end(), std::greater<>());

    draw.w.resize(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        draw.w[i] = draw.x[i] / draw.r_n;
    }

    draw.y = compute_y(draw, {0, 1, 2});
    draw.u2 = compute_u2(draw);
    return draw;
}

std::map<int, double> compute_y(const PopulationDraw& draw,
                                const std::vector<int>& k_list) {
    std::map<int, double> out;
    for (int k : k_list) {
        if (k < 0) {
            throw std::domain_error("compute_y: k must be >= 0");
        }
        if (k == 0) {
            out[0] = static_cast<double>(draw.w.size());
            continue;
        }
        KahanSum sum;
        for (double wi : draw.w) {
            sum.add(k == 1 ? wi : std::pow(wi, k));
        }
        out[k] = sum.value();
    }
    return out;
}

double compute_u2(const PopulationDraw& draw) {
    if (draw.x_sorted.size() < 2) {
        throw std::domain_error("compute_u2: needs N >= 2");
    }
    KahanSum rest;
    for (std::size_t i = 1; i < draw.x_sorted.size(); ++i) {
        rest.add(draw.x_sorted[i]);
    }
    const double r2 = rest.value();
    KahanSum sum;
    for (std::size_t i = 1; i < draw.x_sorted.size(); ++i) {
        const double v = draw.x_sorted[i] / r2;
        sum.add(v * v);
    }
    return sum.value();
}

double reconstruct_y2_from_parts(double w1, double u2) {
    if (!(w1 >= 0.0 && w1 <= 1.0) || !(u2 >= 0.0 && u2 <= 1.0)) {
        throw std::domain_error("reconstruct_y2_from_parts: inputs must be in [0, 1]");
    }
    const double rest = 1.0 - w1;
    return w1 * w1 + rest * rest * u2;
}

}  // namespace paretofam
