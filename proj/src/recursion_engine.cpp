#include "paretofam/recursion_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paretofam {

RhoWeightSampler::RhoWeightSampler(const AlphaParam& params) {
    params.require_heavy_regime("sample_rho_weight");
    alpha_ = params.alpha;
    inv_alpha_ = 1.0 / params.alpha;
    eps_pow_ = std::pow(params.eps_n, -params.alpha);
}

double RhoWeightSampler::operator()(RngStream& rng) {
    // Proposal CDF on [eps, 1]: P(W <= w) = (eps^-a - w^-a)/(eps^-a - 1).
    for (;;) {
        ++proposals;
        const double u = rng.next_unit();
        const double t = eps_pow_ - u * (eps_pow_ - 1.0);
        const double w = std::pow(t, -inv_alpha_);
        const double accept = std::pow(1.0 - w, alpha_ - 1.0);
        if (rng.next_unit() < accept) {
            ++accepts;
            return w;
        }
    }
}

double sample_rho_weight(const AlphaParam& params, RngStream& rng) {
    RhoWeightSampler sampler(params);
    return sampler(rng);
}

RecursionState step(const RecursionState& state, double w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::domain_error("step: w must be in [0, 1]");
    }
    const double keep = 1.0 - w;
    RecursionState next;
    next.y = w * w + keep * keep * state.y;
    const double shrunk_max = keep * state.w_max;
    next.w_max = std::max(w, shrunk_max);
    next.w_max2 = std::max(std::min(w, shrunk_max), keep * state.w_max2);
    next.step = state.step + 1;
    return next;
}

RecursionState initial_state(RngStream& rng) {
    RecursionState s;
    s.y = rng.next_unit();
    if (s.y == 0.0) s.y = 0.5;
    s.w_max = std::sqrt(s.y);
    s.w_max2 = 0.0;
    s.step = 0;
    return s;
}

}  // namespace paretofam
