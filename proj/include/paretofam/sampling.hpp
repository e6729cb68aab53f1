#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "paretofam/alpha_param.hpp"
#include "paretofam/rng.hpp"

namespace paretofam {

/// Quantile of the Pareto(alpha) law F(x) = 1 - x^(-alpha), x >= 1:
/// returns (1-u)^(-1/alpha) for u in [0, 1). Finite for every valid u.
double pareto_inverse_cdf(double u, double alpha);

/// Per-replicate observables accumulated in a single pass over the draws
/// (compensated sums, running top-2). The CLI reports these values; both the
/// streaming path and the full PopulationDraw path go through this struct so
/// reported numbers are bit-identical regardless of which one produced them.
struct ReplicateStats {
    std::size_t n = 0;
    double r_n = 0.0;     // sum of x
    double sum_sq = 0.0;  // sum of x^2
    double x1 = 0.0;      // largest draw
    double x2 = 0.0;      // second largest draw

    double y2() const { return sum_sq / (r_n * r_n); }
    double w1() const { return x1 / r_n; }
    double w2() const { return x2 / r_n; }
    double r2() const { return r_n - x1; }
    double u2() const {
        const double rest = r2();
        return (sum_sq - x1 * x1) / (rest * rest);
    }
    double n_e() const { return 1.0 / y2(); }
};

/// One realization of the population: N reproductive-success variates, their
/// sum, order statistics, weights, and the derived observables.
struct PopulationDraw {
    std::vector<double> x;         // draw order
    std::vector<double> x_sorted;  // decreasing
    std::vector<double> w;         // x[i] / r_n, draw order
    double r_n = 0.0;
    std::map<int, double> y;       // k -> Y_k, filled for k = 0,1,2 on draw
    double u2 = 0.0;
    ReplicateStats stats;
};

/// Streams n Pareto(alpha) variates from rng without materializing them.
ReplicateStats draw_replicate_stats(const AlphaParam& params, RngStream& rng);

/// Full draw with order statistics; deterministic given (seed, stream).
PopulationDraw draw_population(const AlphaParam& params, RngStream& rng);

/// Power sums Y_k = sum_i w_i^k for each requested k >= 0 (compensated).
std::map<int, double> compute_y(const PopulationDraw& draw,
                                const std::vector<int>& k_list);

/// U_2 = sum_{i>=2} (x_{i,N}/R_{2,N})^2 over the N-1 lower order statistics,
/// with R_{2,N} = r_n - x_{1,N}. Requires N >= 2.
double compute_u2(const PopulationDraw& draw);

/// Y_2 decomposition: w1^2 + (1-w1)^2 * u2, for w1, u2 in [0, 1].
double reconstruct_y2_from_parts(double w1, double u2);

}  // namespace paretofam
