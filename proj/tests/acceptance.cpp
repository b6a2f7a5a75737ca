// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracle.hpp"

#include "spinflip/analysis.hpp"
#include "spinflip/bloch.hpp"
#include "spinflip/cost.hpp"
#include "spinflip/protocols.hpp"
#include "spinflip/special_functions.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace spinflip;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::array<double, 3> kGrid{0.3, 1.0, 3.0};
constexpr std::array<Protocol, 3> kProtocols{Protocol::square, Protocol::sine_gordon, Protocol::shortcut};

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome limits() {
    const RatioLimits l = ratio_limits(1e-9, 1e6);
    const double du0 = std::abs(l.ratio_u_small - 2.0 * std::sqrt(2.0) / kPi);
    const double dui = std::abs(l.ratio_u_large - (0.5 + 1.0 / kPi));
    const double ds0 = std::abs(l.ratio_sg_small - 1.0);
    return {du0 < 1e-6 && dui < 1e-3 && ds0 < 1e-6,
            "|du(0)|=" + fmt("%.2e", du0) + " |du(inf)|=" + fmt("%.2e", dui) + " |dsg(0)|=" + fmt("%.2e", ds0)};
}

Outcome ratio_max() {
    const RatioMaximum m = find_ratio_max();
    return {std::abs(m.gamma - 0.0504) < 1e-3 && std::abs(m.ratio - 0.905) < 1e-3,
            "gamma*=" + fmt("%.6f", m.gamma) + " ratio=" + fmt("%.6f", m.ratio)};
}

Outcome closed_form_vs_quadrature() {
    double worst = 0.0;
    for (double eps : kGrid) {
        for (double A : kGrid) {
            const SystemParams p(eps, A);
            for (Protocol proto : kProtocols) {
                const PulseSchedule s = synthesize(proto, p);
                const Trajectory tr = evolve(SpinState::spin_down(), s, p);
                worst = std::max(worst, rel(cost_quadrature(tr, s, p).total, *s.closed_form_cost));
            }
        }
    }
    return {worst < 1e-6, "worst relative error " + fmt("%.2e", worst) + " over 27 runs"};
}

Outcome constraints() {
    const SystemParams p(1.0, 1.0);
    double sy = 0.0, drift = 0.0, start = 0.0, end = 0.0;
    for (Protocol proto : kProtocols) {
        const Trajectory tr = evolve(SpinState::spin_down(), synthesize(proto, p), p);
        sy = std::max(sy, tr.max_abs_sy());
        drift = std::max(drift, tr.max_norm_drift());
        start = std::max(start, std::abs(tr.front().sz + 1.0));
        end = std::max(end, std::abs(tr.back().sz - 1.0));
    }
    return {sy < 1e-6 && drift < 1e-10 && start < 1e-6 && end < 1e-6,
            "max|sy|=" + fmt("%.2e", sy) + " drift=" + fmt("%.2e", drift) + " |sz0+1|=" + fmt("%.2e", start) +
                " |sz1-1|=" + fmt("%.2e", end)};
}

Outcome e_optimum() {
    double worst_x = 0.0, min_slope = 1e300;
    for (double eps : kGrid) {
        for (double A : kGrid) {
            const SystemParams p(eps, A);
            worst_x = std::max(worst_x, optimal_sg_energy(p).x);
            min_slope = std::min(min_slope, sg_cost_slope_at_zero(p));
        }
    }
    return {worst_x < 1e-6 && min_slope >= -1e-8,
            "max e*=" + fmt("%.2e", worst_x) + " min slope=" + fmt("%.2e", min_slope)};
}

Outcome special_functions() {
    const double half = kPi / 2;
    double quad = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double phi = -half + (i + 0.5) * kPi / 10.0;
        for (int j = 0; j < 10; ++j) {
            const double m = 0.99 * j / 9.0;
            const EllipticParameter mp(m);
            quad = std::max(quad, rel(ellip_f(phi, mp), oracle::F(phi, m)));
            quad = std::max(quad, rel(ellip_e_inc(phi, mp), oracle::E(phi, m)));
        }
    }
    for (int j = 0; j < 100; ++j) {
        const double m = 0.99 * j / 99.0;
        quad = std::max(quad, rel(ellip_k(EllipticParameter(m)), oracle::K(m)));
        quad = std::max(quad, rel(ellip_e(EllipticParameter(m)), oracle::E(m)));
    }
    double trip = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double phi = -half + 0.01 + (half - 0.01) * 2.0 * i / 9.0;
        for (int j = 0; j < 10; ++j) {
            const EllipticParameter mp(0.99 * j / 9.0);
            trip = std::max(trip, std::abs(jacobi_sn(ellip_f(phi, mp), mp) - std::sin(phi)));
        }
    }
    const EllipticParameter zero(0.0), one(1.0);
    const double exact = std::max({std::abs(ellip_k(zero) - half), std::abs(ellip_e(zero) - half),
                                   std::abs(ellip_e(one) - 1.0)});
    return {quad < 1e-10 && trip < 1e-10 && exact < 1e-14,
            "quadrature=" + fmt("%.2e", quad) + " sn round-trip=" + fmt("%.2e", trip) + " exact=" + fmt("%.2e", exact)};
}

Outcome stage1_physics() {
    const SystemParams p(1.0, 1.0);
    const PulseSchedule s = protocol_shortcut(p);
    const double boundary = *s.stage_boundary;
    const double c2 = p.epsilon() * p.epsilon() + p.A();
    const Trajectory tr = evolve(SpinState::spin_down(), s, p);
    double identity = 0.0, angle = 0.0;
    for (std::size_t i = 0; i < s.samples.size() && s.samples[i].t <= boundary; ++i) {
        const double t = s.samples[i].t;
        const double rate = shortcut_phase_rate(t, p);
        const double phi = shortcut_phase(t, p);
        identity = std::max(identity, std::abs(0.25 * rate * rate - c2 * std::cos(phi) * std::cos(phi)));
        angle = std::max(angle, std::abs(tr.bloch_angle(i) - phi));
    }
    return {identity < 1e-8 && angle < 1e-6,
            "energy identity=" + fmt("%.2e", identity) + " Bloch angle=" + fmt("%.2e", angle)};
}

Outcome ordering() {
    const SweepResult r = sweep(log_grid(1e-3, 20.0, 200));
    int violations = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r.c_min[i] <= r.c_sg[i]) || !(r.c_min[i] < r.c_u[i])) ++violations;
    }
    return {violations == 0, std::to_string(violations) + " violations on " + std::to_string(r.size()) + " points"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 limits", limits},
        {"2 ratio maximum", ratio_max},
        {"3 closed form vs quadrature", closed_form_vs_quadrature},
        {"4 constraint suite", constraints},
        {"5 e-optimum", e_optimum},
        {"6 special functions", special_functions},
        {"7 stage-1 physics", stage1_physics},
        {"8 ordering", ordering},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        if (!o.pass) ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
