#include "spinflip/cost.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace spinflip {

namespace {

double integrate(const std::vector<double>& t, const std::vector<double>& f, QuadratureRule rule) {
    const std::size_t n = t.size() - 1;  // intervals
    double sum = 0.0;
    std::size_t i = 0;
    if (rule == QuadratureRule::simpson) {
        // Composite Simpson on pairs of equal-width intervals.
        for (; i + 2 <= n; i += 2) {
            const double h = 0.5 * (t[i + 2] - t[i]);
            sum += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        }
    }
    for (; i < n; ++i) sum += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
    return sum;
}

}  // namespace

CostBreakdown cost_quadrature(const Trajectory& traj, const PulseSchedule& schedule, const SystemParams& params,
                              QuadratureRule rule) {
    const auto& pts = traj.points();
    const auto& samples = schedule.samples;
    if (pts.size() != samples.size() || pts.size() < 2) {
        throw std::invalid_argument("cost_quadrature: trajectory and schedule grids differ in size");
    }
    std::vector<double> t(pts.size()), align(pts.size()), field(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& f = samples[i];
        if (pts[i].t != f.t) throw std::invalid_argument("cost_quadrature: trajectory and schedule grids differ");
        t[i] = f.t;
        align[i] = params.A() * pts[i].sx * pts[i].sx;
        field[i] = f.bx * f.bx + f.by * f.by + f.bz * f.bz;
    }
    CostBreakdown out;
    out.alignment_penalty = integrate(t, align, rule);
    out.field_energy = integrate(t, field, rule);
    out.total = out.alignment_penalty + out.field_energy;
    out.method = CostMethod::quadrature;
    return out;
}

double sg_lagrangian(double phi, double phi_dot, const SystemParams& params) {
    const double eps = params.epsilon();
    const double c = std::cos(phi);
    return 0.25 * phi_dot * phi_dot + eps * eps + params.A() * c * c;
}

double shortcut_lagrangian(double phi, double phi_dot, double B, const SystemParams& params) {
    if (B < 0.0) throw std::invalid_argument("field magnitude B must be >= 0");
    const double eps = params.epsilon();
    const double c = std::cos(phi);
    return 0.25 * phi_dot * phi_dot + B * B + 2.0 * B * eps * std::sin(phi) + eps * eps + params.A() * c * c;
}

double shortcut_lagrangian_dB(double phi, double B, const SystemParams& params) {
    return 2.0 * B + 2.0 * params.epsilon() * std::sin(phi);
}

}  // namespace spinflip
