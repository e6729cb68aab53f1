#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "paretofam/analytic_laws.hpp"
#include "paretofam/quadrature.hpp"
#include "paretofam/recursion_engine.hpp"

using namespace paretofam;

namespace {

// Chi-square upper tail via the regularized incomplete gamma Q(k/2, x/2),
// test-only oracle (series + continued fraction).
double gamma_q(double a, double x) {
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 500; ++n) {
            term *= x / (a + n);
            sum += term;
            if (term < sum * 1e-15) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-290) d = 1e-290;
        c = b + an / c;
        if (std::abs(c) < 1e-290) c = 1e-290;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double chi_square_p_value(const std::vector<double>& observed_a,
                          const std::vector<double>& observed_b) {
    double stat = 0.0;
    int dof = 0;
    for (std::size_t i = 0; i < observed_a.size(); ++i) {
        const double total = observed_a[i] + observed_b[i];
        if (total < 10.0) continue;
        const double diff = observed_a[i] - observed_b[i];
        stat += diff * diff / total;
        ++dof;
    }
    if (dof <= 1) return 1.0;
    return gamma_q(0.5 * (dof - 1), 0.5 * stat);
}

}  // namespace

TEST_CASE("step: spec examples and invariants") {
    RecursionState s{0.7, 0.6, 0.3, 10};

    // absorbing extreme w = 1
    const RecursionState one = step(s, 1.0);
    CHECK(one.y == 1.0);
    CHECK(one.w_max == 1.0);
    CHECK(one.w_max2 == 0.0);
    CHECK(one.step == 11);

    // plain arithmetic: y=1, w=0.5 -> 0.5
    const RecursionState half = step(RecursionState{1.0, 1.0, 0.0, 0}, 0.5);
    CHECK(half.y == doctest::Approx(0.5).epsilon(1e-15));

    // hand-evaluated: (w_max=0.6, w_max2=0.3, w=0.5)
    const RecursionState r = step(s, 0.5);
    CHECK(r.w_max == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.w_max2 == doctest::Approx(0.3).epsilon(1e-15));

    CHECK_THROWS_AS(step(s, -0.1), std::domain_error);
    CHECK_THROWS_AS(step(s, 1.1), std::domain_error);
}

TEST_CASE("step reproduces independent arithmetic on random inputs") {
    RngStream rng(77, 0);
    RecursionState s = initial_state(rng);
    for (int i = 0; i < 20000; ++i) {
        const double w = rng.next_unit();
        const RecursionState next = step(s, w);
        // independent reference computation in long double
        const long double keep = 1.0L - static_cast<long double>(w);
        const long double y_ref =
            static_cast<long double>(w) * w + keep * keep * s.y;
        CHECK(next.y == doctest::Approx(static_cast<double>(y_ref)).epsilon(1e-15));
        CHECK(next.w_max >= next.w_max2);
        CHECK(next.w_max <= 1.0);
        CHECK(next.y <= 1.0);
        s = next;
    }
    // after many steps the power-sum bound holds
    CHECK(s.w_max * s.w_max <= s.y * (1.0 + 1e-12));
}

TEST_CASE("rho weight sampler: KS against the exact truncated CDF") {
    const AlphaParam params = AlphaParam::make(1.2, 10000);
    RhoWeightSampler sampler(params);
    RngStream rng(4242, 0);
    const std::size_t m = 1000000;
    std::vector<double> samples(m);
    for (auto& s : samples) s = sampler(rng);
    std::sort(samples.begin(), samples.end());

    // F(w) = 1 - w^-a (1-w)^a / (eps^-a (1-eps)^a), the exact normalized CDF
    const double a = params.alpha;
    const double denom =
        std::pow(params.eps_n, -a) * std::pow(1.0 - params.eps_n, a);
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double f =
            1.0 - std::pow(samples[i], -a) * std::pow(1.0 - samples[i], a) / denom;
        d = std::max({d, std::abs(f - static_cast<double>(i) / m),
                      std::abs(f - static_cast<double>(i + 1) / m)});
    }
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(m)));

    CHECK(sampler.acceptance_rate() > 0.0);
    // acceptance ~ target mass / proposal mass, both known in closed form
    const double target_mass = denom / a;
    const double proposal_mass = (std::pow(params.eps_n, -a) - 1.0) / a;
    CHECK(sampler.acceptance_rate() ==
          doctest::Approx(target_mass / proposal_mass).epsilon(1e-3));

    CHECK(samples.front() >= params.eps_n);
    CHECK(samples.back() <= 1.0);
    CHECK_THROWS_AS(sample_rho_weight(AlphaParam::make(2.5, 100), rng), RegimeError);
}

TEST_CASE("sampled weights: mean matches the spectrum's weight integral") {
    const AlphaParam params = AlphaParam::make(1.2, 1000);
    // E[W] = int w rho / int rho over [eps, 1], by quadrature
    const double num = integrate_log(
        [&](double w) { return w * rho(params, w); }, params.eps_n, 1.0, 1e-10);
    const double den = integrate_log(
        [&](double w) { return rho(params, w); }, params.eps_n, 1.0, 1e-10);
    const double expected = num / den;

    RhoWeightSampler sampler(params);
    RngStream rng(5555, 1);
    const std::size_t m = 2000000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double w = sampler(rng);
        sum += w;
        sum_sq += w * w;
    }
    const double mean = sum / m;
    const double sd = std::sqrt(sum_sq / m - mean * mean);
    const double se = sd / std::sqrt(static_cast<double>(m));
    CHECK(std::abs(mean - expected) < 3.0 * se);
    // and E[W] ~ 1/N up to the finite-cutoff correction
    CHECK(mean == doctest::Approx(1.0 / 1000.0).epsilon(0.25));
}

TEST_CASE("chain mean equals the exact fixed point of the linear recursion") {
    // E[y] = E[W^2] / (2 E[W] - E[W^2]) exactly at stationarity; this is the
    // strong self-consistency check for the chain implementation. Note it
    // sits well BELOW c_n (see ledger: the inserted-weight construction does
    // not reproduce the mean of Pi_Y2).
    const AlphaParam params = AlphaParam::make(1.2, 1000);
    const double den = integrate_log(
        [&](double w) { return rho(params, w); }, params.eps_n, 1.0, 1e-11);
    const double ew = integrate_log(
        [&](double w) { return w * rho(params, w); }, params.eps_n, 1.0, 1e-11) / den;
    const double ew2 = integrate_log(
        [&](double w) { return w * w * rho(params, w); }, params.eps_n, 1.0, 1e-11) / den;
    const double fixed_point = ew2 / (2.0 * ew - ew2);

    RngStream rng(31415, 0);
    double sum = 0.0;
    std::uint64_t count = 0;
    run_chain(params, 4000000, 10000, 1, rng, [&](const ChainSample& s) {
        sum += s.y;
        ++count;
    });
    const double chain_mean = sum / static_cast<double>(count);
    CHECK(chain_mean == doctest::Approx(fixed_point).epsilon(0.10));
}

TEST_CASE("initialization is forgotten after burn-in") {
    const AlphaParam params = AlphaParam::make(1.2, 1000);
    RhoWeightSampler sampler(params);
    RngStream rng(999, 0);
    RecursionState low{1e-9, 3e-5, 0.0, 0};
    RecursionState high{1.0, 1.0, 1.0, 0};
    for (int k = 0; k < 20000; ++k) {
        const double w = sampler(rng);  // shared weights
        low = step(low, w);
        high = step(high, w);
    }
    CHECK(std::abs(low.y - high.y) < 1e-9);
    CHECK(std::abs(low.w_max - high.w_max) < 1e-9);
    CHECK(std::abs(low.w_max2 - high.w_max2) < 1e-9);
}

TEST_CASE("y-chain stationarity: split-half histograms agree") {
    const AlphaParam params = AlphaParam::make(1.2, 1000);
    // thin well past the ~N/2-step correlation time so counts are
    // effectively independent for the chi-square comparison
    const std::uint64_t thin = 4000;
    std::vector<double> first, second;
    RngStream rng(2718, 0);
    std::vector<double> all;
    run_chain(params, 16000000, 10000, thin, rng,
              [&](const ChainSample& s) { all.push_back(s.y); });
    const std::size_t half = all.size() / 2;

    std::vector<double> edges;
    for (double e = -14.0; e <= 0.01; e += 1.0) edges.push_back(std::exp(e));
    std::vector<double> counts_a(edges.size() - 1, 0.0);
    std::vector<double> counts_b(edges.size() - 1, 0.0);
    auto fill = [&](std::size_t begin, std::size_t end, std::vector<double>& counts) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto it = std::upper_bound(edges.begin(), edges.end(), all[i]);
            if (it == edges.begin() || it == edges.end()) continue;
            counts[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
        }
    };
    fill(0, half, counts_a);
    fill(half, all.size(), counts_b);
    CHECK(chi_square_p_value(counts_a, counts_b) > 0.01);
}

TEST_CASE("run_chain argument validation and determinism") {
    const AlphaParam params = AlphaParam::make(1.2, 1000);
    RngStream rng(1, 0);
    CHECK_THROWS_AS(
        run_chain(params, 100, 100, 1, rng, [](const ChainSample&) {}),
        std::invalid_argument);

    auto collect = [&](std::uint64_t seed) {
        std::vector<double> ys;
        RngStream r(seed, 3);
        run_chain(params, 5000, 100, 7, r,
                  [&](const ChainSample& s) { ys.push_back(s.y); });
        return ys;
    };
    CHECK(collect(10) == collect(10));
    CHECK(collect(10) != collect(11));
}
