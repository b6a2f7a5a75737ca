#pragma once

#include "spinflip/system.hpp"

#include <functional>
#include <span>
#include <vector>

namespace spinflip {

/// Closed-form optimal costs of the three protocol families at gamma = eps^2 / A.
struct ProtocolCosts {
    double c_min = 0.0;  ///< shortcut protocol
    double c_sg = 0.0;   ///< sine-Gordon protocol at e = 0
    double c_u = 0.0;    ///< square pulse

    double ratio_u() const { return c_min / c_u; }
    double ratio_sg() const { return c_min / c_sg; }
};

/// gamma >= 0 and A > 0. gamma = 0 is allowed (E(1) = 1).
ProtocolCosts costs_of_gamma(double gamma, double A = 1.0);

struct ScalarMinimum {
    double x = 0.0;
    double f = 0.0;
};

/**
 * Golden-section search for the minimum of f on [lo, hi].
 *
 * f must be unimodal on the interval; that is the caller's responsibility.
 * Both endpoints are compared against the interior estimate at the end so a
 * boundary minimum is returned exactly. Throws std::domain_error if f returns
 * a non-finite value.
 */
ScalarMinimum minimize_scalar(const std::function<double(double)>& f, double lo, double hi, double tol);

struct RatioMaximum {
    double gamma = 0.0;
    double ratio = 0.0;
};

/// Maximizes C_min / C_u over gamma in [0, 1].
RatioMaximum find_ratio_max(double tol = 1e-10);

/// Limiting values of the two cost ratios, evaluated numerically at small and large gamma.
struct RatioLimits {
    double gamma_small = 1e-9;
    double gamma_large = 1e6;
    double ratio_u_small = 0.0;
    double ratio_u_large = 0.0;
    double ratio_sg_small = 0.0;
    double ratio_sg_large = 0.0;
    // Exact limits: 2 sqrt(2)/pi, 1/2 + 1/pi, 1, 1/2 + 1/pi.
    double exact_u_small = 0.0;
    double exact_u_large = 0.0;
    double exact_sg_small = 0.0;
    double exact_sg_large = 0.0;
};

RatioLimits ratio_limits(double gamma_small = 1e-9, double gamma_large = 1e6);

struct SweepResult {
    std::vector<double> gamma;
    std::vector<double> c_min;
    std::vector<double> c_sg;
    std::vector<double> c_u;
    std::vector<double> ratio_u;
    std::vector<double> ratio_sg;

    std::size_t size() const noexcept { return gamma.size(); }
};

/// Evaluates costs_of_gamma on every grid point, in grid order.
SweepResult sweep(std::span<const double> gammas, double A = 1.0);

/// n >= 2 evenly spaced points on [lo, hi], 0 <= lo < hi.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);
/// n >= 2 log-spaced points on [lo, hi], 0 < lo < hi.
std::vector<double> log_grid(double lo, double hi, std::size_t n);
/// Log grid over [1e-3, 20] merged with a linear refinement of [0, 0.5], sorted and deduplicated.
std::vector<double> default_gamma_grid();

/// Minimizes C_sG(e) over e in [0, e_max] (default 10 (eps^2 + A)).
ScalarMinimum optimal_sg_energy(const SystemParams& params, double e_max = -1.0, double tol = 1e-10);

/// One-sided difference (C_sG(h) - C_sG(0)) / h.
double sg_cost_slope_at_zero(const SystemParams& params, double h = 1e-6);

}  // namespace spinflip
