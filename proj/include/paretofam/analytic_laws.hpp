#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "paretofam/alpha_param.hpp"

namespace paretofam {

enum class MomentRegime {
    alpha_in_1_2,   // 1 < alpha < 2: c_n * Beta(k-a,a)/Beta(2-a,a)
    alpha_eq_1,     // alpha == 1: same ratio with c_n = 1/ln n
    alpha_gt_k,     // alpha > 2, 2 <= k < alpha: E[X^k]/(mu^k n^(k-1))
    k_gt_alpha,     // alpha >= 2, k > alpha: a*Beta(k-a,a)/(mu^a n^(a-1))
    alpha_integer,  // k == alpha integer: a*ln(n)/(mu^a n^(a-1))
};

const char* regime_name(MomentRegime regime);

struct MomentReport {
    int k = 0;
    MomentRegime regime = MomentRegime::alpha_in_1_2;
    double value = 0.0;
    std::size_t n = 0;
};

/// E[Y_k] for k >= 2 with regime dispatch over alpha. Rejects alpha < 1.
MomentReport expected_yk(const AlphaParam& params, int k);

/// E[sum_{i != j} W_i^k W_j^l] = E[Y_k] E[Y_l] Beta(k,l)/Beta(alpha,alpha),
/// for 1 <= alpha < 2 and k, l >= 2.
double pair_moment(const AlphaParam& params, int k, int l);

/// CV[Y_2] = c_n^(-1/2) sqrt((3-alpha)(2-alpha)/6) for 1 < alpha < 2.
double cv_y2(const AlphaParam& params);

/// Weight spectrum rho(w): expected number density of families at weight w.
/// 1 <= alpha < 2 uses the c_n form, alpha >= 2 the mu^alpha n^(alpha-1) form.
/// Valid argument range (0, 1]; the soft cutoff eps_n is tracked separately
/// by law_domain().
double rho(const AlphaParam& params, double w);

/// Pair correlation rho*(w, w'): expected number of ordered pairs of distinct
/// families at weights (w, w'). Zero when w + w' >= 1. Requires 1 <= alpha < 2.
double rho_star(const AlphaParam& params, double w, double w_prime);

/// Leading-order density of the largest weight; equals rho(w) pointwise.
double pi_w1(const AlphaParam& params, double w);

/// Leading-order density of the second-largest weight.
double pi_w2(const AlphaParam& params, double w);

/// Density of Y_2 under the largest-summand substitution.
double pi_y2(const AlphaParam& params, double y);

/// Density of N_e = 1/Y_2.
double pi_ne(const AlphaParam& params, double y);

/// Y_2 as a function of recruitment R_N: (1 - mu n/R)^2 plus the lower-order
/// statistic contribution, which is positive for 1 < alpha < 2.
double sweepstakes_curve(const AlphaParam& params, double r_n);

/// The constant second-term factor of the sweepstakes relation, i.e. the
/// large-N value of U_2: (alpha-1)^2 Gamma(2-2/alpha) n^(2(1/alpha-1))
/// / (alpha (2-alpha)).
double u2_asymptotic(const AlphaParam& params);

/// Exact finite-n order-statistic moments for 1 < alpha < 2.
struct OrderStatMoments {
    double e_x1 = 0.0;        // n! G(1-1/a)/G(n+1-1/a)
    double e_x2 = 0.0;        // ((a-1)/a) e_x1
    double e_x2_sq = 0.0;     // n! G(2-2/a)/G(n+1-2/a)
    double e_x1_x2 = 0.0;     // (a/(a-1)) e_x2_sq
    double e_sum_sq_lower_exact = 0.0;  // (a/(a-2))(n - G(2-2/a) n^(2/a))
    double e_sum_sq_lower_asym = 0.0;   // (a/(2-a)) e_x2_sq
    double e_r2 = 0.0;        // mu (n - G(2-1/a) n^(1/a))
};
OrderStatMoments order_stat_moments(const AlphaParam& params);

enum class LawId { rho, pi_w1, pi_w2, pi_y2, pi_ne };

const char* law_name(LawId law);

/// [lo, hi] are the integration limits of the law's normalization statements
/// (1/mu-prefixed cutoffs); [trust_lo, trust_hi] is the prefactor-free
/// asymptotic-validity region the densities are quoted on.
struct LawDomain {
    double lo = 0.0;
    double hi = 0.0;
    double trust_lo = 0.0;
    double trust_hi = 0.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    bool trusted(double x) const { return x >= trust_lo && x <= trust_hi; }
};

LawDomain law_domain(LawId law, const AlphaParam& params);

double law_eval(LawId law, const AlphaParam& params, double x);

/// Integral of the law over [lo, hi] by adaptive quadrature.
double law_mass(LawId law, const AlphaParam& params, double rel_tol = 1e-9);

/// Integral of x^power * law(x) over [lo, hi].
double law_moment(LawId law, const AlphaParam& params, int power,
                  double rel_tol = 1e-9);

/// Sampled analytic curve on a log-spaced grid.
struct CurveTable {
    LawId law = LawId::rho;
    double domain_lo = 0.0;
    double domain_hi = 0.0;
    std::vector<double> xs;
    std::vector<double> fs;
    std::vector<char> in_domain;
};

/// Grid over [grid_lo, grid_hi] (defaults to the law domain when zeros are
/// passed); points outside the soft domain are kept but flagged.
CurveTable make_curve_table(LawId law, const AlphaParam& params, int points,
                            double grid_lo = 0.0, double grid_hi = 0.0);

}  // namespace paretofam
