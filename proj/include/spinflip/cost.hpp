#pragma once

#include "spinflip/bloch.hpp"
#include "spinflip/schedule.hpp"
#include "spinflip/system.hpp"

namespace spinflip {

enum class CostMethod { quadrature, closed_form };
enum class QuadratureRule { trapezoid, simpson };

/// Cost functional split into A * int <sigma_x>^2 dt and int |B_ext|^2 dt.
struct CostBreakdown {
    double alignment_penalty = 0.0;
    double field_energy = 0.0;
    double total = 0.0;
    CostMethod method = CostMethod::quadrature;
};

/**
 * Quadrature of A <sigma_x>^2 + bx^2 + by^2 + bz^2 over [t_start, 0].
 *
 * The trajectory must be sampled on the schedule grid (as evolve() produces).
 * Simpson falls back to the trapezoid rule on the last interval when the
 * interval count is odd.
 */
CostBreakdown cost_quadrature(const Trajectory& traj, const PulseSchedule& schedule, const SystemParams& params,
                              QuadratureRule rule = QuadratureRule::trapezoid);

/// phi_dot^2/4 + eps^2 + A cos^2(phi): the cost integrand with bias compensated and B_y = phi_dot/2.
double sg_lagrangian(double phi, double phi_dot, const SystemParams& params);

/// phi_dot^2/4 + B^2 + 2 B eps sin(phi) + eps^2 + A cos^2(phi) for field magnitude B >= 0
/// directed along the spin in the xz-plane.
double shortcut_lagrangian(double phi, double phi_dot, double B, const SystemParams& params);

/// dL/dB = 2B + 2 eps sin(phi); vanishes at the optimal B = -eps sin(phi).
double shortcut_lagrangian_dB(double phi, double B, const SystemParams& params);

}  // namespace spinflip
