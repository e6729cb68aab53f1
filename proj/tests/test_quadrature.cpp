#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "paretofam/quadrature.hpp"

using namespace paretofam;

TEST_CASE("polynomials are exact") {
    auto r = integrate([](double x) { return 3.0 * x * x; }, 0.0, 2.0);
    CHECK(r.value == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(r.converged);
}

TEST_CASE("known transcendental integrals") {
    auto r = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, 1e-12);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-11));

    auto s = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("steep power-law over many decades") {
    // int_a^1 x^(-2.2) dx, a = 1e-7: (a^-1.2 - 1)/1.2
    const double a = 1e-7;
    const double expected = (std::pow(a, -1.2) - 1.0) / 1.2;
    auto r = integrate_log([](double x) { return std::pow(x, -2.2); }, a, 1.0, 1e-10);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("integrable endpoint singularity") {
    // int_0^1 x^(-0.2) dx = 1.25 with the singular endpoint included
    auto r = integrate([](double x) { return std::pow(x, -0.2); }, 1e-300, 1.0,
                       1e-9, 0.0, 80);
    CHECK(r.value == doctest::Approx(1.25).epsilon(1e-6));
}

TEST_CASE("argument validation") {
    CHECK_THROWS(integrate([](double) { return 0.0; }, 1.0, 0.0));
    CHECK_THROWS(integrate_log([](double) { return 0.0; }, 0.0, 1.0));
}
