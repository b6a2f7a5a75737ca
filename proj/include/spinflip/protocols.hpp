#pragma once

#include "spinflip/schedule.hpp"
#include "spinflip/system.hpp"

namespace spinflip {

struct SynthesisOptions {
    /// Grid density in samples per unit of sqrt(epsilon^2 + A) * t.
    double samples_per_unit = 2000.0;
};

// Sign conventions. The spin starts at -z (Bloch angle -pi/2) and ends at +z.
// A field B_y rotates the xz-plane Bloch angle at rate -2 B_y.
//  * square and sine_gordon use B_y >= 0, so the spin passes through -x.
//  * shortcut uses the counterterm B_y = -phi_dot / 2 <= 0, so the spin passes
//    through +x and its Bloch angle is exactly the protocol phase phi(t).
// Costs depend only on B^2 and <sigma_x>^2 and are the same either way.

// ---------------------------------------------------------------- square pulse

/// Constant B_y = sqrt(eps^2 + A/2) with the bias compensated, B_z = eps, B_x = 0.
PulseSchedule protocol_square(const SystemParams& params, const SynthesisOptions& opts = {});

/// Cost of a uniform rotation by pi in time T: pi^2 / (4T) + (eps^2 + A/2) T.
double square_cost(const SystemParams& params, double duration);

/// Optimal duration pi / (2 sqrt(eps^2 + A/2)).
double square_duration(const SystemParams& params);

// ---------------------------------------------------------------- sine-Gordon

/// A / (eps^2 + A + e). Throws std::domain_error when this equals 1 (eps = 0 and e = 0).
double sg_modulus(const SystemParams& params, double e);

/// T0(e) = K(m) / sqrt(eps^2 + A + e).
double sg_duration(const SystemParams& params, double e);

/// phi(t) on [-T0, 0], running from -pi/2 to pi/2. Midpoint t = -T0/2 maps to phi = 0.
double sg_phase(double t, const SystemParams& params, double e);

/// phi_dot = 2 sqrt(eps^2 + e + A cos^2 phi).
double sg_phase_rate(double t, const SystemParams& params, double e);

/// C_sG(e) = -e T0(e) + 2 sqrt(eps^2 + A + e) E(m).
double sg_cost(const SystemParams& params, double e);

/// B_z = eps, B_x = 0, B_y = phi_dot / 2 over [-T0(e), 0].
PulseSchedule protocol_sine_gordon(const SystemParams& params, double e = 0.0,
                                   const SynthesisOptions& opts = {});

// ---------------------------------------------------------------- shortcut

/// Counterdiabatic field B_y,ct = -phi_dot / 2 for an eigenstate path in the xz-plane.
double shortcut_counterterm(double phi_dot);

/// T = K(A / (eps^2 + A)) / (2 sqrt(eps^2 + A)); phi(-T) = 0.
double shortcut_boundary_time(const SystemParams& params);

/// Truncation point of the phi < 0 stage, where phi + pi/2 = 1e-8.
double shortcut_truncation_time(const SystemParams& params);

/// Protocol phase phi(t) for t <= 0: arctan(sinh(2c(t+T))) before -T, arcsin(sn(...)) after.
double shortcut_phase(double t, const SystemParams& params);
double shortcut_phase_rate(double t, const SystemParams& params);

/// Constrained field magnitude: B = -eps sin(phi) for phi < 0, zero afterwards.
double shortcut_field_magnitude(double t, const SystemParams& params);

/// External field at t. Stage 1: B_x = B cos(phi), B_z = eps + B sin(phi). Stage 2: B_x = 0, B_z = eps.
/// B_y is the counterterm throughout.
FieldSample shortcut_field(double t, const SystemParams& params);

/// Stage costs sqrt(eps^2 + A) and sqrt(eps^2 + A) E(A / (eps^2 + A)).
double shortcut_stage1_cost(const SystemParams& params);
double shortcut_stage2_cost(const SystemParams& params);
double shortcut_cost(const SystemParams& params);

/// Two-stage schedule on [shortcut_truncation_time, 0], with the stage boundary on a grid point.
PulseSchedule protocol_shortcut(const SystemParams& params, const SynthesisOptions& opts = {});

/// Dispatches on the protocol tag (custom is rejected).
PulseSchedule synthesize(Protocol protocol, const SystemParams& params, double e = 0.0,
                         const SynthesisOptions& opts = {});

}  // namespace spinflip
