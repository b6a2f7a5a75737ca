#pragma once

#include <stdexcept>

namespace spinflip {

/**
 * Elliptic parameter m of F(phi|m), K(m), E(phi|m), E(m) and sn(u|m).
 *
 * This is the *parameter* convention (m = k^2), not the modulus k. Passing k
 * where m is expected is the classic bug with these functions, so the value
 * has to be wrapped explicitly.
 *
 * Valid range is 0 <= m <= 1. Whether m = 1 is acceptable depends on the
 * function: E(1) = 1 and sn(u|1) = tanh(u) are finite, K(1) is not.
 */
class EllipticParameter {
public:
    explicit EllipticParameter(double m);

    double value() const noexcept { return m_; }
    /// Complementary parameter 1 - m.
    double complement() const noexcept { return 1.0 - m_; }

private:
    double m_;
};

/// Carlson's symmetric integral R_F(x, y, z). At most one argument may be 0.
double carlson_rf(double x, double y, double z);

/// Carlson's symmetric integral R_D(x, y, z). x, y >= 0 with x + y > 0, z > 0.
double carlson_rd(double x, double y, double z);

/// Incomplete integral of the first kind, F(phi|m) = int_0^phi (1 - m sin^2)^(-1/2).
/// Requires |phi| <= pi/2; at m = 1 the endpoint |phi| = pi/2 diverges and is rejected.
double ellip_f(double phi, EllipticParameter m);

/// Complete integral of the first kind K(m) = F(pi/2|m), via the AGM. Rejects m = 1.
double ellip_k(EllipticParameter m);

/// Incomplete integral of the second kind, E(phi|m) = int_0^phi (1 - m sin^2)^(1/2).
double ellip_e_inc(double phi, EllipticParameter m);

/// Complete integral of the second kind E(m) = E(pi/2|m), via the AGM. E(1) = 1.
double ellip_e(EllipticParameter m);

/**
 * Jacobi sn(u|m), the inverse of F: if u = F(phi|m) then sn(u|m) = sin(phi).
 *
 * Evaluated with the descending AGM (Landen) scheme; sn(u|0) = sin(u) and
 * sn(u|1) = tanh(u) are returned directly.
 */
double jacobi_sn(double u, EllipticParameter m);

}  // namespace spinflip
