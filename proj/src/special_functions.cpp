#include "spinflip/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace spinflip {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAgmSteps = 32;

void require_half_period(double phi, const char* fn) {
    if (!(std::abs(phi) <= kHalfPi)) {
        throw std::domain_error(std::string(fn) + ": |phi| must not exceed pi/2, got " +
                                std::to_string(phi));
    }
}

}  // namespace

EllipticParameter::EllipticParameter(double m) : m_(m) {
    if (!(m >= 0.0 && m <= 1.0)) {
        throw std::domain_error("elliptic parameter m must lie in [0, 1], got " + std::to_string(m));
    }
}

// Carlson (1995), duplication theorem with the fifth-order series tail.
double carlson_rf(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z < 0.0 || (x == 0.0 && y == 0.0) || (y == 0.0 && z == 0.0) ||
        (x == 0.0 && z == 0.0)) {
        throw std::domain_error("carlson_rf: arguments must be nonnegative with at most one zero");
    }
    const double a0 = (x + y + z) / 3.0;
    const double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
                     std::pow(3.0 * kEps, 1.0 / 6.0);
    double an = a0;
    double scale = 1.0;
    while (q * scale >= std::abs(an)) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lambda = sx * sy + sy * sz + sz * sx;
        an = 0.25 * (an + lambda);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        scale *= 0.25;
    }
    // x, y, z have been replaced by x_n, y_n, z_n; recover the deviations from a0.
    const double dx = (an - x) / an;
    const double dy = (an - y) / an;
    const double dz = -(dx + dy);
    const double e2 = dx * dy - dz * dz;
    const double e3 = dx * dy * dz;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(an);
}

double carlson_rd(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || x + y == 0.0 || !(z > 0.0)) {
        throw std::domain_error("carlson_rd: need x, y >= 0, x + y > 0, z > 0");
    }
    const double a0 = (x + y + 3.0 * z) / 5.0;
    const double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) /
                     std::pow(0.25 * kEps, 1.0 / 6.0);
    double an = a0;
    double scale = 1.0;
    double tail = 0.0;
    while (q * scale >= std::abs(an)) {
        const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const double lambda = sx * sy + sy * sz + sz * sx;
        tail += scale / (sz * (z + lambda));
        an = 0.25 * (an + lambda);
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        scale *= 0.25;
    }
    const double dx = (an - x) / an;
    const double dy = (an - y) / an;
    const double dz = -(dx + dy) / 3.0;
    const double xy = dx * dy;
    const double z2 = dz * dz;
    const double e2 = xy - 6.0 * z2;
    const double e3 = (3.0 * xy - 8.0 * z2) * dz;
    const double e4 = 3.0 * (xy - z2) * z2;
    const double e5 = xy * z2 * dz;
    const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                          9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return scale * series / (an * std::sqrt(an)) + 3.0 * tail;
}

double ellip_f(double phi, EllipticParameter m) {
    require_half_period(phi, "ellip_f");
    if (m.value() == 1.0 && std::abs(phi) == kHalfPi) {
        throw std::domain_error("ellip_f: F(pi/2|1) diverges");
    }
    if (phi == 0.0) return 0.0;
    const double s = std::sin(phi);
    const double c = std::cos(phi);
    return s * carlson_rf(c * c, 1.0 - m.value() * s * s, 1.0);
}

double ellip_k(EllipticParameter m) {
    if (m.value() == 1.0) {
        throw std::domain_error("ellip_k: K(m) diverges at m = 1");
    }
    double a = 1.0;
    double b = std::sqrt(m.complement());
    for (int i = 0; i < kMaxAgmSteps && std::abs(a - b) > kEps * a; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kHalfPi / a;
}

double ellip_e_inc(double phi, EllipticParameter m) {
    require_half_period(phi, "ellip_e_inc");
    if (phi == 0.0) return 0.0;
    const double s = std::sin(phi);
    if (m.value() == 1.0) return s;
    const double c = std::cos(phi);
    const double y = 1.0 - m.value() * s * s;
    return s * carlson_rf(c * c, y, 1.0) - m.value() * s * s * s * carlson_rd(c * c, y, 1.0) / 3.0;
}

double ellip_e(EllipticParameter m) {
    if (m.value() == 1.0) return 1.0;
    // E = K * (1 - sum_n 2^(n-1) c_n^2) with c_0^2 = m.
    double a = 1.0;
    double b = std::sqrt(m.complement());
    double sum = 0.5 * m.value();
    double weight = 0.5;
    for (int i = 0; i < kMaxAgmSteps; ++i) {
        const double c = 0.5 * (a - b);
        if (std::abs(c) <= kEps * a) break;
        weight *= 2.0;
        sum += weight * c * c;
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kHalfPi / a * (1.0 - sum);
}

double jacobi_sn(double u, EllipticParameter m) {
    if (m.value() == 0.0) return std::sin(u);
    if (m.value() == 1.0) return std::tanh(u);

    std::array<double, kMaxAgmSteps + 1> a{};
    std::array<double, kMaxAgmSteps + 1> c{};
    a[0] = 1.0;
    c[0] = std::sqrt(m.value());
    double b = std::sqrt(m.complement());
    int n = 0;
    while (n < kMaxAgmSteps && std::abs(c[n]) > kEps) {
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double amplitude = std::ldexp(a[n] * u, n);
    for (int j = n; j > 0; --j) {
        amplitude = 0.5 * (amplitude + std::asin(c[j] / a[j] * std::sin(amplitude)));
    }
    return std::sin(amplitude);
}

}  // namespace spinflip
