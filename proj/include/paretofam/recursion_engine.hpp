#pragma once

#include <cstdint>

#include "paretofam/alpha_param.hpp"
#include "paretofam/rng.hpp"

namespace paretofam {

/// The (y, w_max, w'_max) triple advanced by the insert-and-shrink recursions.
struct RecursionState {
    double y = 0.0;
    double w_max = 0.0;
    double w_max2 = 0.0;
    std::uint64_t step = 0;
};

/// Draws one family weight from rho(w)/n restricted to [eps_n, 1]:
/// truncated-Pareto proposal (inverse CDF of w^(-alpha-1)) accepted with
/// probability (1-w)^(alpha-1), which is <= 1 throughout for 1 < alpha < 2.
double sample_rho_weight(const AlphaParam& params, RngStream& rng);

/// sample_rho_weight with proposal/acceptance counters exposed.
struct RhoWeightSampler {
    explicit RhoWeightSampler(const AlphaParam& params);

    double operator()(RngStream& rng);

    double acceptance_rate() const {
        return proposals == 0 ? 0.0 : static_cast<double>(accepts) / static_cast<double>(proposals);
    }

    std::uint64_t proposals = 0;
    std::uint64_t accepts = 0;

private:
    double alpha_;
    double eps_pow_;   // eps_n^(-alpha)
    double inv_alpha_;
};

/// Advances all three recursions from the same inserted weight w:
///   y'      = w^2 + (1-w)^2 y
///   w_max'  = max(w, (1-w) w_max)
///   w_max2' = max(min(w, (1-w) w_max), (1-w) w_max2)
RecursionState step(const RecursionState& state, double w);

/// Initial state per the construction: y0 uniform on (0,1),
/// w_max = sqrt(y0), w'_max = 0 (forgotten after burn-in).
RecursionState initial_state(RngStream& rng);

struct ChainSample {
    double y;
    double n_e;
    double w_max;
    double w_max2;
};

/// Runs the chain for `iterations` steps, discarding `burn_in` and then
/// emitting every `thinning`-th state to `sink` (a callable taking
/// ChainSample). Deterministic under a fixed stream.
template <typename Sink>
void run_chain(const AlphaParam& params, std::uint64_t iterations,
               std::uint64_t burn_in, std::uint64_t thinning, RngStream& rng,
               Sink&& sink) {
    params.require_heavy_regime("run_chain");
    if (iterations <= burn_in) {
        throw std::invalid_argument("run_chain: iterations must exceed burn_in");
    }
    if (thinning == 0) thinning = 1;
    RhoWeightSampler draw_weight(params);
    RecursionState state = initial_state(rng);
    for (std::uint64_t k = 0; k < iterations; ++k) {
        state = step(state, draw_weight(rng));
        if (k >= burn_in && (k - burn_in) % thinning == 0) {
            sink(ChainSample{state.y, 1.0 / state.y, state.w_max, state.w_max2});
        }
    }
}

}  // namespace paretofam
