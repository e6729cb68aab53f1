#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "paretofam/special_functions.hpp"

using namespace paretofam;

TEST_CASE("log_gamma at known points") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
    // ln Gamma(1/2) = ln sqrt(pi)
    CHECK(log_gamma(0.5) ==
          doctest::Approx(0.5723649429247000870717137).epsilon(1e-13));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
}

TEST_CASE("log_gamma matches the C library implementation") {
    // std::lgamma is an independent oracle for the in-repo evaluation.
    const double xs[] = {0.05, 0.2, 0.333, 0.8, 1.2, 1.5, 1.8001, 2.5,
                         7.3,  41.0, 1e3,  1e4, 1e6 + 0.1666, 1e7};
    for (double x : xs) {
        CAPTURE(x);
        CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
    }
}

TEST_CASE("log_gamma rejects nonpositive arguments") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("beta function values") {
    // Beta(2-a, a) at a=1.2: Gamma(0.8) Gamma(1.2) / Gamma(2)
    const double expected = std::exp(std::lgamma(0.8) + std::lgamma(1.2));
    CHECK(beta_fn(0.8, 1.2) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(beta_fn(0.8, 1.2) == doctest::Approx(1.0689593).epsilon(2e-7));
    CHECK(beta_fn(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta_fn(2.0, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    // symmetry
    CHECK(beta_fn(0.37, 2.9) == doctest::Approx(beta_fn(2.9, 0.37)).epsilon(1e-14));
    CHECK_THROWS_AS(beta_fn(0.0, 1.0), std::domain_error);
}

TEST_CASE("gamma recurrence Gamma(x+1) = x Gamma(x)") {
    for (double x : {0.1, 0.35, 0.77, 1.3, 2.9, 6.2}) {
        CAPTURE(x);
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-13));
    }
}
