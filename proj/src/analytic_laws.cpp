#include "paretofam/analytic_laws.hpp"

#include <cmath>
#include <stdexcept>

#include "paretofam/quadrature.hpp"
#include "paretofam/special_functions.hpp"

namespace paretofam {

namespace {

double nd(const AlphaParam& p) { return static_cast<double>(p.n); }

void require_alpha_ge_1(const AlphaParam& p, const char* what) {
    if (!(p.alpha >= 1.0)) {
        throw RegimeError(std::string(what) + ": requires alpha >= 1");
    }
}

void require_alpha_in_1_2_closed(const AlphaParam& p, const char* what) {
    if (!(p.alpha >= 1.0 && p.alpha < 2.0)) {
        throw RegimeError(std::string(what) + ": requires 1 <= alpha < 2");
    }
}

}  // namespace

const char* regime_name(MomentRegime regime) {
    switch (regime) {
        case MomentRegime::alpha_in_1_2: return "alpha_in_1_2";
        case MomentRegime::alpha_eq_1: return "alpha_eq_1";
        case MomentRegime::alpha_gt_k: return "alpha_gt_k";
        case MomentRegime::k_gt_alpha: return "k_gt_alpha";
        case MomentRegime::alpha_integer: return "alpha_integer";
    }
    return "?";
}

MomentReport expected_yk(const AlphaParam& params, int k) {
    if (k < 2) {
        throw std::invalid_argument("expected_yk: k must be >= 2 (Y_0 = n, Y_1 = 1)");
    }
    require_alpha_ge_1(params, "expected_yk");
    const double a = params.alpha;
    const double kd = static_cast<double>(k);
    const double n = nd(params);

    MomentReport report;
    report.k = k;
    report.n = params.n;

    if (a < 2.0) {
        report.regime = a == 1.0 ? MomentRegime::alpha_eq_1 : MomentRegime::alpha_in_1_2;
        report.value = params.c_n *
                       std::exp(log_beta(kd - a, a) - log_beta(2.0 - a, a));
        return report;
    }

    // alpha >= 2 (the Kingman-domain forms)
    const double log_mu_a_n = a * std::log(params.mu) + (a - 1.0) * std::log(n);
    const bool alpha_is_integer = a == std::floor(a);
    if (alpha_is_integer && kd == a) {
        report.regime = MomentRegime::alpha_integer;
        report.value = std::exp(std::log(a * std::log(n)) - log_mu_a_n);
    } else if (kd > a) {
        report.regime = MomentRegime::k_gt_alpha;
        report.value = std::exp(std::log(a) + log_beta(kd - a, a) - log_mu_a_n);
    } else {
        // 2 <= k < alpha: E[X^k] = alpha/(alpha-k) is finite.
        report.regime = MomentRegime::alpha_gt_k;
        report.value = (a / (a - kd)) /
                       (std::pow(params.mu, kd) * std::pow(n, kd - 1.0));
    }
    return report;
}

double pair_moment(const AlphaParam& params, int k, int l) {
    if (k < 2 || l < 2) {
        throw std::invalid_argument("pair_moment: k and l must be >= 2");
    }
    require_alpha_in_1_2_closed(params, "pair_moment");
    const double a = params.alpha;
    const double ratio = std::exp(log_beta(k, l) - log_beta(a, a));
    return expected_yk(params, k).value * expected_yk(params, l).value * ratio;
}

double cv_y2(const AlphaParam& params) {
    params.require_heavy_regime("cv_y2");
    const double a = params.alpha;
    return std::sqrt((3.0 - a) * (2.0 - a) / 6.0) / std::sqrt(params.c_n);
}

double rho(const AlphaParam& params, double w) {
    if (!(w > 0.0 && w <= 1.0)) {
        throw std::domain_error("rho: w must be in (0, 1]");
    }
    require_alpha_ge_1(params, "rho");
    const double a = params.alpha;
    const double shape = std::pow(w, -a - 1.0) * std::pow(1.0 - w, a - 1.0);
    if (a < 2.0) {
        return params.c_n * shape / beta_fn(2.0 - a, a);
    }
    return a * shape / std::exp(a * std::log(params.mu) + (a - 1.0) * std::log(nd(params)));
}

double rho_star(const AlphaParam& params, double w, double w_prime) {
    if (!(w > 0.0) || !(w_prime > 0.0)) {
        throw std::domain_error("rho_star: weights must be positive");
    }
    require_alpha_in_1_2_closed(params, "rho_star");
    const double rest = 1.0 - w - w_prime;
    if (rest <= 0.0) {
        return 0.0;  // Heaviside support
    }
    const double a = params.alpha;
    const double b = beta_fn(2.0 - a, a);
    return params.c_n * params.c_n *
           std::pow(w * w_prime, -a - 1.0) * std::pow(rest, 2.0 * a - 1.0) /
           (b * b);
}

double pi_w1(const AlphaParam& params, double w) {
    params.require_heavy_regime("pi_w1");
    return rho(params, w);
}

double pi_w2(const AlphaParam& params, double w) {
    if (!(w > 0.0 && w <= 1.0)) {
        throw std::domain_error("pi_w2: w must be in (0, 1]");
    }
    params.require_heavy_regime("pi_w2");
    const double a = params.alpha;
    return params.c_n * params.c_n * std::pow(w, -2.0 * a - 1.0) *
           std::pow(1.0 - w, 2.0 * a - 1.0) / (a * beta_fn(2.0 - a, a));
}

double pi_y2(const AlphaParam& params, double y) {
    if (!(y > 0.0 && y <= 1.0)) {
        throw std::domain_error("pi_y2: y must be in (0, 1]");
    }
    params.require_heavy_regime("pi_y2");
    const double a = params.alpha;
    return params.c_n * std::pow(y, -0.5 * a - 1.0) *
           std::pow(1.0 - std::sqrt(y), a - 1.0) / (2.0 * beta_fn(2.0 - a, a));
}

double pi_ne(const AlphaParam& params, double y) {
    if (!(y >= 1.0)) {
        throw std::domain_error("pi_ne: y must be >= 1");
    }
    params.require_heavy_regime("pi_ne");
    const double a = params.alpha;
    return params.c_n * std::pow(y, 0.5 * a - 1.0) *
           std::pow(1.0 - 1.0 / std::sqrt(y), a - 1.0) /
           (2.0 * beta_fn(2.0 - a, a));
}

double u2_asymptotic(const AlphaParam& params) {
    params.require_heavy_regime("u2_asymptotic");
    const double a = params.alpha;
    // Gamma(2-2/a) > 0 on this regime; the denominator is written a(2-a)
    // so the term comes out positive, matching E[U_2] >= 0.
    return (a - 1.0) * (a - 1.0) * gamma_fn(2.0 - 2.0 / a) *
           std::pow(nd(params), 2.0 * (1.0 / a - 1.0)) / (a * (2.0 - a));
}

double sweepstakes_curve(const AlphaParam& params, double r_n) {
    if (!(r_n > 0.0)) {
        throw std::domain_error("sweepstakes_curve: r_n must be positive");
    }
    params.require_heavy_regime("sweepstakes_curve");
    const double ratio = params.mu * nd(params) / r_n;
    const double w1 = 1.0 - ratio;
    return w1 * w1 + ratio * ratio * u2_asymptotic(params);
}

OrderStatMoments order_stat_moments(const AlphaParam& params) {
    params.require_heavy_regime("order_stat_moments");
    const double a = params.alpha;
    const double n = nd(params);
    const double log_n_fact = log_gamma(n + 1.0);

    OrderStatMoments m;
    m.e_x1 = std::exp(log_n_fact + log_gamma(1.0 - 1.0 / a) - log_gamma(n + 1.0 - 1.0 / a));
    m.e_x2 = (a - 1.0) / a * m.e_x1;
    m.e_x2_sq = std::exp(log_n_fact + log_gamma(2.0 - 2.0 / a) - log_gamma(n + 1.0 - 2.0 / a));
    m.e_x1_x2 = a / (a - 1.0) * m.e_x2_sq;
    const double g22 = gamma_fn(2.0 - 2.0 / a);
    m.e_sum_sq_lower_exact = a / (a - 2.0) * (n - g22 * std::pow(n, 2.0 / a));
    m.e_sum_sq_lower_asym = a / (2.0 - a) * m.e_x2_sq;
    m.e_r2 = params.mu * (n - gamma_fn(2.0 - 1.0 / a) * std::pow(n, 1.0 / a));
    return m;
}

const char* law_name(LawId law) {
    switch (law) {
        case LawId::rho: return "rho";
        case LawId::pi_w1: return "pi_w1";
        case LawId::pi_w2: return "pi_w2";
        case LawId::pi_y2: return "pi_y2";
        case LawId::pi_ne: return "pi_ne";
    }
    return "?";
}

LawDomain law_domain(LawId law, const AlphaParam& params) {
    params.require_finite_mean("law_domain");
    const double a = params.alpha;
    const double n = nd(params);
    const double w_soft = std::pow(n, 1.0 / a - 1.0);  // typical largest weight scale
    LawDomain d;
    switch (law) {
        case LawId::rho:
            d = {params.eps_n, 1.0, params.eps_n, 1.0};
            break;
        case LawId::pi_w1:
        case LawId::pi_w2:
            d = {w_soft / params.mu, 1.0, w_soft, 1.0};
            break;
        case LawId::pi_y2:
            d = {w_soft * w_soft / (params.mu * params.mu), 1.0, w_soft * w_soft, 1.0};
            break;
        case LawId::pi_ne: {
            const double hi = params.mu * params.mu / (w_soft * w_soft);
            d = {1.0, hi, 1.0, 1.0 / (w_soft * w_soft)};
            break;
        }
    }
    return d;
}

double law_eval(LawId law, const AlphaParam& params, double x) {
    switch (law) {
        case LawId::rho: return rho(params, x);
        case LawId::pi_w1: return pi_w1(params, x);
        case LawId::pi_w2: return pi_w2(params, x);
        case LawId::pi_y2: return pi_y2(params, x);
        case LawId::pi_ne: return pi_ne(params, x);
    }
    throw std::logic_error("law_eval: unknown law");
}

double law_mass(LawId law, const AlphaParam& params, double rel_tol) {
    return law_moment(law, params, 0, rel_tol);
}

double law_moment(LawId law, const AlphaParam& params, int power, double rel_tol) {
    const LawDomain d = law_domain(law, params);
    auto f = [&](double x) {
        double v = law_eval(law, params, x);
        for (int i = 0; i < power; ++i) v *= x;
        return v;
    };
    return integrate_log(f, d.lo, d.hi, rel_tol).value;
}

CurveTable make_curve_table(LawId law, const AlphaParam& params, int points,
                            double grid_lo, double grid_hi) {
    if (points < 2) {
        throw std::invalid_argument("make_curve_table: need at least 2 points");
    }
    const LawDomain d = law_domain(law, params);
    const double lo = grid_lo > 0.0 ? grid_lo : d.lo;
    const double hi = grid_hi > 0.0 ? grid_hi : d.hi;
    if (!(lo < hi)) {
        throw std::invalid_argument("make_curve_table: grid_lo must be < grid_hi");
    }
    CurveTable table;
    table.law = law;
    table.domain_lo = d.lo;
    table.domain_hi = d.hi;
    table.xs.reserve(points);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        double x = std::exp(log_lo + step * i);
        if (i == points - 1) x = hi;
        table.xs.push_back(x);
        table.fs.push_back(law_eval(law, params, x));
        table.in_domain.push_back(d.contains(x) ? 1 : 0);
    }
    return table;
}

}  // namespace paretofam
