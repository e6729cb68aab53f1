#pragma once

namespace paretofam {

/// Natural log of the gamma function for x > 0, Lanczos g=7 evaluation.
/// Accurate to ~1e-14 relative over the arguments used here.
/// Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// Gamma(x) for x > 0.
double gamma_fn(double x);

/// ln Beta(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), a, b > 0.
double log_beta(double a, double b);

/// Beta(a, b) for a, b > 0.
double beta_fn(double a, double b);

}  // namespace paretofam
