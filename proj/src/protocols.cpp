#include "spinflip/protocols.hpp"

#include "spinflip/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace spinflip {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTruncationAngle = 1e-8;

// Uniform grid t_i = -(n - i) h, i = 0..n, so the last sample is exactly 0.
std::vector<FieldSample> sample_grid(long n, double h, const std::function<FieldSample(double)>& field) {
    std::vector<FieldSample> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) out.push_back(field(-static_cast<double>(n - i) * h));
    return out;
}

long interval_count(double length, double rate, const SynthesisOptions& opts) {
    if (!(opts.samples_per_unit > 0.0)) throw std::invalid_argument("samples_per_unit must be > 0");
    return std::max(2L, static_cast<long>(std::ceil(opts.samples_per_unit * rate * length)));
}

void require_nonnegative_energy(double e) {
    if (!std::isfinite(e) || e < 0.0) {
        throw std::invalid_argument("sine-Gordon energy e must be finite and >= 0, got " + std::to_string(e));
    }
}

double clamped_asin(double x) { return std::asin(std::clamp(x, -1.0, 1.0)); }

}  // namespace

// ---------------------------------------------------------------- square pulse

double square_duration(const SystemParams& params) {
    const double eps = params.epsilon();
    return kPi / (2.0 * std::sqrt(eps * eps + 0.5 * params.A()));
}

double square_cost(const SystemParams& params, double duration) {
    if (!(duration > 0.0)) throw std::invalid_argument("square pulse duration must be > 0");
    const double eps = params.epsilon();
    return kPi * kPi / (4.0 * duration) + (eps * eps + 0.5 * params.A()) * duration;
}

PulseSchedule protocol_square(const SystemParams& params, const SynthesisOptions& opts) {
    const double eps = params.epsilon();
    const double by = std::sqrt(eps * eps + 0.5 * params.A());
    const double duration = square_duration(params);
    const long n = interval_count(duration, params.rate(), opts);

    PulseSchedule s;
    s.protocol = Protocol::square;
    s.epsilon = eps;
    s.A = params.A();
    s.duration = duration;
    s.closed_form_cost = kPi * by;
    s.exact_field = [eps, by](double t) { return FieldSample{t, 0.0, by, eps}; };
    s.samples = sample_grid(n, duration / static_cast<double>(n), s.exact_field);
    s.t_start = s.samples.front().t;
    return s;
}

// ---------------------------------------------------------------- sine-Gordon

double sg_modulus(const SystemParams& params, double e) {
    require_nonnegative_energy(e);
    const double eps = params.epsilon();
    const double m = params.A() / (eps * eps + params.A() + e);
    if (m >= 1.0) {
        std::ostringstream msg;
        msg << "epsilon=" << eps << " invalid for sine_gordon with e=" << e << ": modulus=1";
        throw std::domain_error(msg.str());
    }
    return m;
}

double sg_duration(const SystemParams& params, double e) {
    const EllipticParameter m(sg_modulus(params, e));
    const double eps = params.epsilon();
    return ellip_k(m) / std::sqrt(eps * eps + params.A() + e);
}

double sg_phase(double t, const SystemParams& params, double e) {
    const EllipticParameter m(sg_modulus(params, e));
    const double eps = params.epsilon();
    const double c = std::sqrt(eps * eps + params.A() + e);
    const double k = ellip_k(m);
    const double t0 = k / c;
    if (t < -t0 * (1.0 + 1e-12) || t > 0.0) {
        throw std::out_of_range("sg_phase: t=" + std::to_string(t) + " outside [-T0, 0]");
    }
    // F(phi|m) = 2c (t + T0/2), i.e. the argument runs over [-K, K].
    const double u = std::clamp(2.0 * c * t + k, -k, k);
    return clamped_asin(jacobi_sn(u, m));
}

double sg_phase_rate(double t, const SystemParams& params, double e) {
    const double phi = sg_phase(t, params, e);
    const double eps = params.epsilon();
    const double cphi = std::cos(phi);
    return 2.0 * std::sqrt(eps * eps + e + params.A() * cphi * cphi);
}

double sg_cost(const SystemParams& params, double e) {
    const EllipticParameter m(sg_modulus(params, e));
    const double eps = params.epsilon();
    const double c = std::sqrt(eps * eps + params.A() + e);
    return -e * ellip_k(m) / c + 2.0 * c * ellip_e(m);
}

PulseSchedule protocol_sine_gordon(const SystemParams& params, double e, const SynthesisOptions& opts) {
    const double duration = sg_duration(params, e);
    const long n = interval_count(duration, params.rate(), opts);

    PulseSchedule s;
    s.protocol = Protocol::sine_gordon;
    s.epsilon = params.epsilon();
    s.A = params.A();
    s.e = e;
    s.duration = duration;
    s.closed_form_cost = sg_cost(params, e);
    s.exact_field = [params, e](double t) {
        return FieldSample{t, 0.0, 0.5 * sg_phase_rate(t, params, e), params.epsilon()};
    };
    s.samples = sample_grid(n, duration / static_cast<double>(n), s.exact_field);
    s.t_start = s.samples.front().t;
    return s;
}

// ---------------------------------------------------------------- shortcut

double shortcut_counterterm(double phi_dot) { return -0.5 * phi_dot; }

namespace {

double shortcut_modulus(const SystemParams& params) {
    const double m = params.A() / (params.rate() * params.rate());
    if (m >= 1.0) {
        throw std::domain_error("epsilon=0 invalid for shortcut: phi>0 stage has modulus=1");
    }
    return m;
}

void require_nonpositive(double t) {
    if (t > 0.0) throw std::out_of_range("shortcut protocol is defined for t <= 0, got " + std::to_string(t));
}

}  // namespace

double shortcut_boundary_time(const SystemParams& params) {
    return ellip_k(EllipticParameter(shortcut_modulus(params))) / (2.0 * params.rate());
}

double shortcut_truncation_time(const SystemParams& params) {
    const double lead = std::asinh(1.0 / std::tan(kTruncationAngle));
    return -shortcut_boundary_time(params) - lead / (2.0 * params.rate());
}

double shortcut_phase(double t, const SystemParams& params) {
    require_nonpositive(t);
    const double c = params.rate();
    const double boundary = shortcut_boundary_time(params);
    const double u = 2.0 * c * (t + boundary);
    if (u < 0.0) return std::atan(std::sinh(u));
    return clamped_asin(jacobi_sn(u, EllipticParameter(shortcut_modulus(params))));
}

double shortcut_phase_rate(double t, const SystemParams& params) {
    require_nonpositive(t);
    const double c = params.rate();
    const double u = 2.0 * c * (t + shortcut_boundary_time(params));
    if (u < 0.0) return 2.0 * c / std::cosh(u);
    const double eps = params.epsilon();
    const double cphi = std::cos(shortcut_phase(t, params));
    return 2.0 * std::sqrt(eps * eps + params.A() * cphi * cphi);
}

double shortcut_field_magnitude(double t, const SystemParams& params) {
    const double phi = shortcut_phase(t, params);
    return phi < 0.0 ? -params.epsilon() * std::sin(phi) : 0.0;
}

FieldSample shortcut_field(double t, const SystemParams& params) {
    require_nonpositive(t);
    const double eps = params.epsilon();
    const double c = params.rate();
    const double u = 2.0 * c * (t + shortcut_boundary_time(params));
    if (u < 0.0) {
        // tan(phi) = sinh(u): cos(phi) = sech(u), sin(phi) = tanh(u).
        const double sech = 1.0 / std::cosh(u);
        const double th = std::tanh(u);
        return {t, -eps * th * sech, -c * sech, eps * sech * sech};
    }
    return {t, 0.0, shortcut_counterterm(shortcut_phase_rate(t, params)), eps};
}

double shortcut_stage1_cost(const SystemParams& params) { return params.rate(); }

double shortcut_stage2_cost(const SystemParams& params) {
    return params.rate() * ellip_e(EllipticParameter(shortcut_modulus(params)));
}

double shortcut_cost(const SystemParams& params) {
    return shortcut_stage1_cost(params) + shortcut_stage2_cost(params);
}

PulseSchedule protocol_shortcut(const SystemParams& params, const SynthesisOptions& opts) {
    const double c = params.rate();
    const double boundary = shortcut_boundary_time(params);
    const double lead = -shortcut_truncation_time(params) - boundary;
    const long n2 = interval_count(boundary, c, opts);
    const double h = boundary / static_cast<double>(n2);
    const long n1 = std::max(1L, static_cast<long>(std::ceil(lead / h)));

    PulseSchedule s;
    s.protocol = Protocol::shortcut;
    s.epsilon = params.epsilon();
    s.A = params.A();
    s.duration = boundary;
    s.closed_form_cost = shortcut_cost(params);
    s.stage_boundary = -static_cast<double>(n2) * h;
    s.exact_field = [params](double t) { return shortcut_field(t, params); };
    s.samples = sample_grid(n1 + n2, h, s.exact_field);
    s.t_start = s.samples.front().t;
    return s;
}

PulseSchedule synthesize(Protocol protocol, const SystemParams& params, double e, const SynthesisOptions& opts) {
    switch (protocol) {
        case Protocol::square: return protocol_square(params, opts);
        case Protocol::sine_gordon: return protocol_sine_gordon(params, e, opts);
        case Protocol::shortcut: return protocol_shortcut(params, opts);
        case Protocol::custom: break;
    }
    throw std::invalid_argument("custom schedules cannot be synthesized");
}

}  // namespace spinflip
