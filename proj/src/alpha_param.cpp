#include "paretofam/alpha_param.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "paretofam/special_functions.hpp"

namespace paretofam {

AlphaParam AlphaParam::make(double alpha, std::size_t n) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("AlphaParam: alpha must be positive and finite");
    }
    if (n < 2) {
        throw std::invalid_argument("AlphaParam: n must be at least 2");
    }
    AlphaParam p;
    p.alpha = alpha;
    p.n = n;
    const double nd = static_cast<double>(n);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    if (alpha > 1.0) {
        p.mu = alpha / (alpha - 1.0);
        p.eps_n = 1.0 / (p.mu * nd);
    } else {
        p.mu = std::numeric_limits<double>::infinity();
        p.eps_n = nan;
    }

    if (alpha > 1.0 && alpha < 2.0) {
        // exp of the log form; the direct product under/overflows for huge n.
        const double log_c = std::log(alpha) + log_beta(2.0 - alpha, alpha) -
                             alpha * std::log(p.mu) - (alpha - 1.0) * std::log(nd);
        p.c_n = std::exp(log_c);
    } else if (alpha == 1.0) {
        p.c_n = 1.0 / std::log(nd);
    } else {
        p.c_n = nan;
    }
    return p;
}

void AlphaParam::require_heavy_regime(const char* what) const {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        throw RegimeError(std::string(what) + ": requires 1 < alpha < 2, got alpha=" +
                          std::to_string(alpha));
    }
}

void AlphaParam::require_finite_mean(const char* what) const {
    if (!(alpha > 1.0)) {
        throw RegimeError(std::string(what) + ": requires alpha > 1 (finite mean), got alpha=" +
                          std::to_string(alpha));
    }
}

}  // namespace paretofam
