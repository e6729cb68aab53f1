#pragma once

#include <cstddef>
#include <stdexcept>

namespace paretofam {

/// Thrown when an operation is evaluated outside the tail-index regime it
/// is defined for (most closed forms require 1 < alpha < 2).
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Validated tail index with its derived constants.
///
/// mu    = alpha/(alpha-1)            (infinite for alpha <= 1)
/// c_n   = alpha*Beta(2-alpha,alpha)/(mu^alpha n^(alpha-1)) for 1 < alpha < 2,
///         1/ln(n) for alpha == 1, NaN otherwise (E[Y_2] scale)
/// eps_n = 1/(mu*n)                   (small-weight cutoff; NaN for alpha <= 1)
struct AlphaParam {
    double alpha = 0.0;
    std::size_t n = 0;
    double mu = 0.0;
    double c_n = 0.0;
    double eps_n = 0.0;

    static AlphaParam make(double alpha, std::size_t n);

    bool finite_mean() const { return alpha > 1.0; }

    /// Most closed forms in this library hold for 1 < alpha < 2 only.
    void require_heavy_regime(const char* what) const;

    /// Operations needing mu or eps_n reject alpha <= 1.
    void require_finite_mean(const char* what) const;
};

}  // namespace paretofam
