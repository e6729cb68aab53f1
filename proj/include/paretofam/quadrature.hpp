#pragma once

#include <functional>

namespace paretofam {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // estimated absolute error
    long evaluations = 0;
    bool converged = false;

    operator double() const { return value; }
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Bisects until the panel error estimate meets rel_tol/abs_tol or
/// max_depth is reached.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 0.0,
                     int max_depth = 60);

/// Same contract but the interval is pre-split into geometrically spaced
/// panels (one per factor ~2 of the abscissa). Use when the integrand is
/// steep toward a positive lower endpoint, e.g. w^(-alpha-1) on [eps, 1].
/// Requires 0 < a < b.
QuadResult integrate_log(const std::function<double(double)>& f, double a,
                         double b, double rel_tol = 1e-10, double abs_tol = 0.0,
                         int max_depth = 48);

}  // namespace paretofam
