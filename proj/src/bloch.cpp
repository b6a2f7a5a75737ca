#include "spinflip/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace spinflip {

namespace {

constexpr double kNormTolerance = 1e-8;
constexpr double kMaxRotationPerStep = 0.01;
constexpr int kMaxRefinements = 4;

const Complex kI{0.0, 1.0};

TrajectoryPoint make_point(double t, const SpinState& s) {
    return {t, s, pauli_expect(s, Axis::x), pauli_expect(s, Axis::y), pauli_expect(s, Axis::z)};
}

// exp(-i (b . sigma) dt) applied in place.
void propagate(SpinState& s, double bx, double by, double bz, double dt) {
    const double b = std::sqrt(bx * bx + by * by + bz * bz);
    const double theta = b * dt;
    const double c = std::cos(theta);
    // sin(theta) / b, continuous at b = 0
    const double g = b > 0.0 ? std::sin(theta) / b : dt;
    const Complex up = s.up;
    const Complex down = s.down;
    s.up = c * up - kI * g * (bz * up + Complex(bx, -by) * down);
    s.down = c * down - kI * g * (Complex(bx, by) * up - bz * down);
}

Trajectory integrate(const SpinState& initial, const PulseSchedule& schedule, double eps, double step) {
    const auto& samples = schedule.samples;
    std::vector<TrajectoryPoint> points;
    points.reserve(samples.size());
    SpinState s = initial;
    points.push_back(make_point(samples.front().t, s));
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double t0 = samples[i - 1].t;
        const double dt = samples[i].t - t0;
        const auto n = std::max<long>(1, static_cast<long>(std::ceil(dt / step - 1e-9)));
        const double h = dt / static_cast<double>(n);
        for (long k = 0; k < n; ++k) {
            const FieldSample f = schedule.field_at(t0 + (static_cast<double>(k) + 0.5) * h);
            propagate(s, f.bx, f.by, f.bz - eps, h);
        }
        points.push_back(make_point(samples[i].t, s));
    }
    return Trajectory(std::move(points));
}

}  // namespace

SpinState SpinState::in_xz_plane(double phi) {
    const double half_polar = 0.5 * (std::numbers::pi / 2.0 - phi);
    return {{std::cos(half_polar), 0.0}, {std::sin(half_polar), 0.0}};
}

double pauli_expect(const SpinState& state, Axis axis) {
    const Complex coherence = std::conj(state.up) * state.down;
    switch (axis) {
        case Axis::x: return 2.0 * coherence.real();
        case Axis::y: return 2.0 * coherence.imag();
        case Axis::z: return std::norm(state.up) - std::norm(state.down);
    }
    return 0.0;
}

Matrix2 hamiltonian(const SystemParams& params, const FieldSample& f) {
    const double z = f.bz - params.epsilon();
    return {{{Complex(z, 0.0), Complex(f.bx, -f.by)}, {Complex(f.bx, f.by), Complex(-z, 0.0)}}};
}

Trajectory::Trajectory(std::vector<TrajectoryPoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("trajectory must not be empty");
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].t > points_[i - 1].t)) {
            throw std::invalid_argument("trajectory times must be strictly increasing");
        }
    }
    if (points_.back().t != 0.0) throw std::invalid_argument("trajectory must end at t = 0");
}

double Trajectory::max_norm_drift() const {
    double drift = 0.0;
    for (const auto& p : points_) {
        const double d = std::abs(p.state.norm() - 1.0);
        if (!(d <= drift)) drift = d;  // NaN propagates
    }
    return drift;
}

double Trajectory::max_abs_sy() const {
    double m = 0.0;
    for (const auto& p : points_) m = std::max(m, std::abs(p.sy));
    return m;
}

double Trajectory::bloch_angle(std::size_t i) const { return std::atan2(points_.at(i).sz, points_.at(i).sx); }

double default_step(const PulseSchedule& schedule, const SystemParams& params) {
    double field = 0.0;
    for (const auto& f : schedule.samples) {
        const double z = f.bz - params.epsilon();
        field = std::max(field, std::sqrt(f.bx * f.bx + f.by * f.by + z * z));
    }
    const double h = schedule.spacing();
    return field > 0.0 ? std::min(h, kMaxRotationPerStep / field) : h;
}

Trajectory evolve(const SpinState& initial, const PulseSchedule& schedule, const SystemParams& params,
                  std::optional<double> step) {
    schedule.validate();
    if (step && !(*step > 0.0)) throw std::invalid_argument("integration step must be > 0");
    if (std::abs(initial.norm() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("initial state is not normalized");
    }
    double h = step ? *step : default_step(schedule, params);
    const int attempts = step ? 1 : kMaxRefinements + 1;
    double drift = 0.0;
    for (int attempt = 0; attempt < attempts; ++attempt, h *= 0.5) {
        Trajectory traj = integrate(initial, schedule, params.epsilon(), h);
        drift = traj.max_norm_drift();
        if (drift <= kNormTolerance) return traj;
    }
    throw IntegrationError("norm drift " + std::to_string(drift) + " exceeds 1e-8; reduce the step");
}

}  // namespace spinflip
