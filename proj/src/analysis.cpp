#include "spinflip/analysis.hpp"

#include "spinflip/protocols.hpp"
#include "spinflip/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spinflip {

namespace {

constexpr double kPi = std::numbers::pi;

double checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw std::domain_error("minimize_scalar: objective is not finite at x=" + std::to_string(x));
    }
    return v;
}

}  // namespace

ProtocolCosts costs_of_gamma(double gamma, double A) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite and >= 0");
    if (!(A > 0.0)) throw std::invalid_argument("A must be > 0");
    const double root_a = std::sqrt(A);
    const double scale = root_a * std::sqrt(gamma + 1.0);
    const double e = ellip_e(EllipticParameter(1.0 / (1.0 + gamma)));
    return {scale * (1.0 + e), 2.0 * scale * e, kPi * root_a * std::sqrt(gamma + 0.5)};
}

ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: need lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("minimize_scalar: tol must be > 0");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = checked(f, x1);
    double f2 = checked(f, x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = checked(f, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = checked(f, x2);
        }
    }
    ScalarMinimum best = f1 <= f2 ? ScalarMinimum{x1, f1} : ScalarMinimum{x2, f2};
    for (double edge : {lo, hi}) {
        const double fe = checked(f, edge);
        if (fe <= best.f) best = {edge, fe};
    }
    return best;
}

RatioMaximum find_ratio_max(double tol) {
    const auto negated = [](double g) { return -costs_of_gamma(g).ratio_u(); };
    const ScalarMinimum m = minimize_scalar(negated, 0.0, 1.0, tol);
    return {m.x, -m.f};
}

RatioLimits ratio_limits(double gamma_small, double gamma_large) {
    RatioLimits out;
    out.gamma_small = gamma_small;
    out.gamma_large = gamma_large;
    const ProtocolCosts small = costs_of_gamma(gamma_small);
    const ProtocolCosts large = costs_of_gamma(gamma_large);
    out.ratio_u_small = small.ratio_u();
    out.ratio_sg_small = small.ratio_sg();
    out.ratio_u_large = large.ratio_u();
    out.ratio_sg_large = large.ratio_sg();
    out.exact_u_small = 2.0 * std::numbers::sqrt2 / kPi;
    out.exact_u_large = 0.5 + 1.0 / kPi;
    out.exact_sg_small = 1.0;
    out.exact_sg_large = 0.5 + 1.0 / kPi;
    return out;
}

SweepResult sweep(std::span<const double> gammas, double A) {
    SweepResult r;
    for (double g : gammas) {
        const ProtocolCosts c = costs_of_gamma(g, A);
        r.gamma.push_back(g);
        r.c_min.push_back(c.c_min);
        r.c_sg.push_back(c.c_sg);
        r.c_u.push_back(c.c_u);
        r.ratio_u.push_back(c.ratio_u());
        r.ratio_sg.push_back(c.ratio_sg());
    }
    return r;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (!(lo >= 0.0 && lo < hi) || n < 2) {
        throw std::invalid_argument("linear_grid: need 0 <= lo < hi and n >= 2");
    }
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    g.back() = hi;
    return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && lo < hi) || n < 2) throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> default_gamma_grid() {
    std::vector<double> g = log_grid(1e-3, 20.0, 200);
    const std::vector<double> fine = linear_grid(0.0, 0.5, 101);
    g.insert(g.end(), fine.begin(), fine.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

ScalarMinimum optimal_sg_energy(const SystemParams& params, double e_max, double tol) {
    const double hi = e_max > 0.0 ? e_max : 10.0 * (params.epsilon() * params.epsilon() + params.A());
    return minimize_scalar([&](double e) { return sg_cost(params, e); }, 0.0, hi, tol);
}

double sg_cost_slope_at_zero(const SystemParams& params, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("difference step must be > 0");
    return (sg_cost(params, h) - sg_cost(params, 0.0)) / h;
}

}  // namespace spinflip
