#include "paretofam/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace paretofam {

namespace {

// 15-point Kronrod abscissae/weights with embedded 7-point Gauss rule,
// for the interval [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b,
                   long& evals) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    evals += 1;
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        evals += 2;
        result_kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) {
            result_gauss += kWg[j / 2] * (f1 + f2);
        }
    }
    result_kronrod *= half;
    result_gauss *= half;
    const double err = std::abs(result_kronrod - result_gauss);
    // Conservative sharpening used by QUADPACK-style codes.
    const double scaled = err == 0.0 ? 0.0 : std::pow(200.0 * err, 1.5);
    return {result_kronrod, std::min(err, scaled > 0.0 ? scaled : err)};
}

struct Panel {
    double a, b, value, error;
    int depth;
};

QuadResult integrate_impl(const std::function<double(double)>& f,
                          const std::vector<std::pair<double, double>>& segments,
                          double rel_tol, double abs_tol, int max_depth) {
    QuadResult out;
    std::vector<Panel> work;
    double total = 0.0;
    double total_err = 0.0;
    for (auto [a, b] : segments) {
        PanelEstimate e = gk15(f, a, b, out.evaluations);
        work.push_back({a, b, e.value, e.error, 0});
        total += e.value;
        total_err += e.error;
    }

    auto tolerance = [&](double value_scale) {
        return std::max(abs_tol, rel_tol * std::abs(value_scale));
    };

    bool depth_hit = false;
    while (total_err > tolerance(total) && !work.empty()) {
        // Split the worst panel.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < work.size(); ++i) {
            if (work[i].error > work[worst].error) worst = i;
        }
        Panel p = work[worst];
        if (p.depth >= max_depth || p.b - p.a < 1e-305) {
            depth_hit = true;
            break;
        }
        work.erase(work.begin() + static_cast<long>(worst));
        const double mid = 0.5 * (p.a + p.b);
        PanelEstimate left = gk15(f, p.a, mid, out.evaluations);
        PanelEstimate right = gk15(f, mid, p.b, out.evaluations);
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        work.push_back({p.a, mid, left.value, left.error, p.depth + 1});
        work.push_back({mid, p.b, right.value, right.error, p.depth + 1});
    }

    out.value = total;
    out.error = total_err;
    out.converged = !depth_hit && total_err <= tolerance(total) * 1.0001 + 1e-300;
    return out;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, int max_depth) {
    if (!(a < b)) {
        throw std::invalid_argument("integrate: requires a < b");
    }
    return integrate_impl(f, {{a, b}}, rel_tol, abs_tol, max_depth);
}

QuadResult integrate_log(const std::function<double(double)>& f, double a,
                         double b, double rel_tol, double abs_tol,
                         int max_depth) {
    if (!(0.0 < a && a < b)) {
        throw std::invalid_argument("integrate_log: requires 0 < a < b");
    }
    std::vector<std::pair<double, double>> segments;
    double lo = a;
    while (lo * 2.0 < b) {
        segments.emplace_back(lo, lo * 2.0);
        lo *= 2.0;
    }
    segments.emplace_back(lo, b);
    return integrate_impl(f, segments, rel_tol, abs_tol, max_depth);
}

}  // namespace paretofam
