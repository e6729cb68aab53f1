#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "paretofam/sampling.hpp"

using namespace paretofam;

TEST_CASE("pareto_inverse_cdf closed form") {
    CHECK(pareto_inverse_cdf(0.0, 1.2) == 1.0);
    // 0.25^(-1/1.2), frozen from high-precision evaluation
    CHECK(pareto_inverse_cdf(0.75, 1.2) ==
          doctest::Approx(3.1748021039363988).epsilon(1e-14));
    // inverse composed with the forward CDF returns x
    const double u = 1.0 - std::pow(2.0, -1.5);
    CHECK(pareto_inverse_cdf(u, 1.5) == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(pareto_inverse_cdf(1.0, 1.2), std::domain_error);
    CHECK_THROWS_AS(pareto_inverse_cdf(-0.1, 1.2), std::domain_error);
    CHECK_THROWS_AS(pareto_inverse_cdf(0.5, 0.0), std::domain_error);
}

TEST_CASE("draw invariants: normalization, monotone power sums, bounds") {
    const AlphaParam params = AlphaParam::make(1.2, 5000);
    RngStream rng(42, 0);
    for (int rep = 0; rep < 10; ++rep) {
        PopulationDraw draw = draw_population(params, rng);
        REQUIRE(draw.x.size() == params.n);
        CHECK(draw.r_n >= static_cast<double>(params.n));
        for (double xi : draw.x) CHECK(xi >= 1.0);
        CHECK(std::is_sorted(draw.x_sorted.begin(), draw.x_sorted.end(),
                             std::greater<>()));

        const auto y = compute_y(draw, {0, 1, 2, 3, 4});
        CHECK(y.at(0) == static_cast<double>(params.n));
        CHECK(y.at(1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(y.at(2) <= 1.0);
        CHECK(y.at(3) <= y.at(2));
        CHECK(y.at(4) <= y.at(3));

        const double w1 = draw.x_sorted[0] / draw.r_n;
        CHECK(w1 * w1 <= y.at(2));
        CHECK(draw.u2 > 0.0);
        CHECK(draw.u2 <= 1.0);
    }
}

TEST_CASE("Y2 decomposition identity holds per draw") {
    const AlphaParam params = AlphaParam::make(1.5, 20000);
    RngStream rng(7, 3);
    for (int rep = 0; rep < 5; ++rep) {
        PopulationDraw draw = draw_population(params, rng);
        const double w1 = draw.x_sorted[0] / draw.r_n;
        const double rebuilt = reconstruct_y2_from_parts(w1, draw.u2);
        CHECK(rebuilt == doctest::Approx(draw.y.at(2)).epsilon(1e-12));
    }
}

TEST_CASE("compute_y and compute_u2 on tiny populations") {
    PopulationDraw draw;
    draw.x = {4.0, 1.0, 1.0};
    draw.x_sorted = {4.0, 1.0, 1.0};
    draw.r_n = 6.0;
    draw.w = {4.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};

    // x = (4,1,1): R2 = 2, U2 = 2 (1/2)^2 = 0.5
    CHECK(compute_u2(draw) == doctest::Approx(0.5).epsilon(1e-15));
    const auto y = compute_y(draw, {2, 3});
    CHECK(y.at(2) == doctest::Approx(0.5).epsilon(1e-15));
    // Y2 = (4/6)^2 + (2/6)^2 * 0.5 = 0.5 exactly
    CHECK(reconstruct_y2_from_parts(4.0 / 6.0, 0.5) ==
          doctest::Approx(y.at(2)).epsilon(1e-15));

    PopulationDraw pair;
    pair.x = {2.0, 2.0};
    pair.x_sorted = {2.0, 2.0};
    pair.r_n = 4.0;
    pair.w = {0.5, 0.5};
    CHECK(compute_u2(pair) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(compute_y(pair, {2}).at(2) == doctest::Approx(0.5).epsilon(1e-15));

    PopulationDraw degenerate;
    degenerate.x = {5.0};
    degenerate.x_sorted = {5.0};
    degenerate.r_n = 5.0;
    degenerate.w = {1.0};
    CHECK_THROWS_AS(compute_u2(degenerate), std::domain_error);
    CHECK(compute_y(degenerate, {3}).at(3) == doctest::Approx(1.0));
}

TEST_CASE("reconstruct_y2_from_parts edge cases") {
    CHECK(reconstruct_y2_from_parts(1.0, 0.3) == 1.0);
    CHECK(reconstruct_y2_from_parts(0.5, 0.5) == doctest::Approx(0.375));
    CHECK_THROWS_AS(reconstruct_y2_from_parts(1.2, 0.5), std::domain_error);
    CHECK_THROWS_AS(reconstruct_y2_from_parts(0.5, -0.1), std::domain_error);
}

TEST_CASE("replicate stats agree with the full draw") {
    const AlphaParam params = AlphaParam::make(1.2, 3000);
    RngStream rng_a(123, 5);
    RngStream rng_b(123, 5);
    const ReplicateStats streamed = draw_replicate_stats(params, rng_a);
    const PopulationDraw full = draw_population(params, rng_b);
    // same stream, same accumulators: bit-identical reported values
    CHECK(streamed.r_n == full.stats.r_n);
    CHECK(streamed.sum_sq == full.stats.sum_sq);
    CHECK(streamed.x1 == full.stats.x1);
    CHECK(streamed.x2 == full.stats.x2);
    CHECK(streamed.x1 == full.x_sorted[0]);
    CHECK(streamed.x2 == full.x_sorted[1]);
}

TEST_CASE("determinism: same (seed, stream) reproduces byte-identical draws") {
    const AlphaParam params = AlphaParam::make(1.2, 1000);
    RngStream a(99, 17), b(99, 17), c(99, 18);
    const PopulationDraw d1 = draw_population(params, a);
    const PopulationDraw d2 = draw_population(params, b);
    CHECK(d1.x == d2.x);
    const PopulationDraw d3 = draw_population(params, c);
    CHECK(d1.x != d3.x);
}

TEST_CASE("Kolmogorov-Smirnov: draws follow F(x) = 1 - x^-alpha") {
    const double alpha = 1.2;
    const std::size_t n = 100000;
    RngStream rng(2024, 0);
    std::vector<double> xs(n);
    for (auto& x : xs) x = pareto_inverse_cdf(rng.next_unit(), alpha);
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = 1.0 - std::pow(xs[i], -alpha);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(f - lo), std::abs(f - hi)});
    }
    // 1% critical value of the KS statistic
    const double critical = 1.628 / std::sqrt(static_cast<double>(n));
    CHECK(d < critical);
}

TEST_CASE("law of large numbers: mean recruitment approaches mu") {
    // alpha = 1.5, mu = 3; averaged over replicates the sample mean of
    // r_n / n lands within a few standard errors.
    const AlphaParam params = AlphaParam::make(1.5, 1000);
    const std::size_t reps = 3000;
    double sum = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        RngStream rng(5150, i);
        sum += draw_replicate_stats(params, rng).r_n / static_cast<double>(params.n);
    }
    const double mean = sum / static_cast<double>(reps);
    CHECK(mean == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("order-statistic ratio: mean X2 over mean X1 near (alpha-1)/alpha") {
    // E[X1] is heavy-tailed (tail index alpha), so its sample mean is the
    // noisy part; the replicate median is the tight secondary check.
    const double alpha = 1.5;
    const AlphaParam params = AlphaParam::make(alpha, 10000);
    const std::size_t reps = 10000;
    std::vector<double> x1(reps);
    double sum_x1 = 0.0, sum_x2 = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        RngStream rng(91119, i);
        const ReplicateStats s = draw_replicate_stats(params, rng);
        x1[i] = s.x1;
        sum_x1 += s.x1;
        sum_x2 += s.x2;
    }
    CHECK(sum_x2 / sum_x1 == doctest::Approx((alpha - 1.0) / alpha).epsilon(0.05));

    // secondary: median of X1/N^(1/alpha) vs the Frechet median (ln 2)^(-1/alpha)
    std::nth_element(x1.begin(), x1.begin() + reps / 2, x1.end());
    const double median = x1[reps / 2];
    const double scale = std::pow(1e4, 1.0 / alpha);
    CHECK(median / scale == doctest::Approx(std::pow(std::log(2.0), -1.0 / alpha))
                                .epsilon(0.03));

    // and the exact finite-N mean formula for the well-behaved X2
    const double log_exact = std::lgamma(1e4 + 1.0) + std::lgamma(2.0 - 1.0 / alpha) -
                             std::lgamma(1e4 + 1.0 - 1.0 / alpha);
    CHECK(sum_x2 / reps == doctest::Approx(std::exp(log_exact)).epsilon(0.02));
}

TEST_CASE("replicate-average U2 matches the asymptotic lower-order term") {
    // E[U_2] ~ (a-1)^2 Gamma(2-2/a) N^(2(1/a-1)) / (a(2-a)), the second term
    // of the sweepstakes relation with the recruitment factor removed.
    const AlphaParam params = AlphaParam::make(1.2, 10000);
    const double expected = 0.04 * 2.6789385347077476 *
                            std::pow(1e4, 2.0 * (1.0 / 1.2 - 1.0)) / 0.96;
    const std::size_t reps = 4000;
    double sum_u2 = 0.0, sum_r2 = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        RngStream rng(8088, i);
        const ReplicateStats s = draw_replicate_stats(params, rng);
        sum_u2 += s.u2();
        sum_r2 += s.r2();
    }
    CHECK(sum_u2 / reps == doctest::Approx(expected).epsilon(0.10));

    // E[R_2,N] = mu (N - Gamma(2-1/a) N^(1/a)), a tight mean
    const double gamma_7_6 = 0.92771933340602973;  // Gamma(2 - 1/1.2)
    const double expected_r2 =
        6.0 * (1e4 - gamma_7_6 * std::pow(1e4, 1.0 / 1.2));
    CHECK(sum_r2 / reps == doctest::Approx(expected_r2).epsilon(0.01));
}

TEST_CASE("rescaled largest order statistic: E[X1]/N^(1/alpha) near Gamma(1-1/alpha)") {
    const double alpha = 1.2;
    const AlphaParam params = AlphaParam::make(alpha, 10000);
    const std::size_t reps = 4000;
    double sum = 0.0;
    for (std::size_t i = 0; i < reps; ++i) {
        RngStream rng(31337, i);
        sum += draw_replicate_stats(params, rng).x1;
    }
    const double mean_x1 = sum / static_cast<double>(reps);
    const double scale = std::pow(static_cast<double>(params.n), 1.0 / alpha);
    // Gamma(1 - 1/1.2) = Gamma(1/6); heavy-tailed average, wide tolerance
    CHECK(mean_x1 / scale == doctest::Approx(5.56631600).epsilon(0.25));
}
