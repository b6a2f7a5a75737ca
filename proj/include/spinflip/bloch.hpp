#pragma once

#include "spinflip/schedule.hpp"
#include "spinflip/system.hpp"

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace spinflip {

using Complex = std::complex<double>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Pure spin-1/2 state in the sigma_z eigenbasis.
struct SpinState {
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    static SpinState spin_up() { return {{1.0, 0.0}, {0.0, 0.0}}; }
    static SpinState spin_down() { return {{0.0, 0.0}, {1.0, 0.0}}; }
    /// State polarized along Bloch angle phi in the xz-plane: (cos phi, 0, sin phi).
    static SpinState in_xz_plane(double phi);

    double norm() const { return std::sqrt(std::norm(up) + std::norm(down)); }
};

enum class Axis { x, y, z };

/// <psi|sigma_axis|psi> for a normalized state.
double pauli_expect(const SpinState& state, Axis axis);

/// H = -epsilon sigma_z + bx sigma_x + by sigma_y + bz sigma_z.
Matrix2 hamiltonian(const SystemParams& params, const FieldSample& field);

struct TrajectoryPoint {
    double t = 0.0;
    SpinState state;
    double sx = 0.0;
    double sy = 0.0;
    double sz = 0.0;
};

class Trajectory {
public:
    explicit Trajectory(std::vector<TrajectoryPoint> points);

    const std::vector<TrajectoryPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const TrajectoryPoint& front() const { return points_.front(); }
    const TrajectoryPoint& back() const { return points_.back(); }

    double max_norm_drift() const;
    double max_abs_sy() const;
    /// atan2(sz, sx) at sample i, the Bloch angle in the xz-plane.
    double bloch_angle(std::size_t i) const;

private:
    std::vector<TrajectoryPoint> points_;
};

/// Thrown by evolve when the norm drifts beyond tolerance even after step refinement.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest step keeping |H| * step <= 0.01 rad, capped at the schedule spacing.
double default_step(const PulseSchedule& schedule, const SystemParams& params);

/**
 * Integrates i dpsi/dt = H(t) psi over the schedule window.
 *
 * Each substep applies the exact 2x2 propagator of the Hamiltonian frozen at
 * the substep midpoint, so the result is unitary up to rounding and converges
 * at second order in the step. States are recorded on the schedule's sample
 * grid. If step is absent, default_step() is used.
 */
Trajectory evolve(const SpinState& initial, const PulseSchedule& schedule, const SystemParams& params,
                  std::optional<double> step = std::nullopt);

}  // namespace spinflip
