#pragma once

namespace spinflip {

/// Biased two-level system: free Hamiltonian -epsilon * sigma_z, alignment penalty weight A.
/// Units have hbar = 1, so epsilon is an energy and A an energy squared.
class SystemParams {
public:
    /// Throws std::invalid_argument unless epsilon >= 0 and A > 0 (both finite).
    SystemParams(double epsilon, double A);

    double epsilon() const noexcept { return epsilon_; }
    double A() const noexcept { return A_; }
    /// Dimensionless ratio epsilon^2 / A that fixes every cost ratio.
    double gamma() const noexcept { return epsilon_ * epsilon_ / A_; }
    /// sqrt(epsilon^2 + A), the natural rate of the optimal protocols.
    double rate() const noexcept;

private:
    double epsilon_;
    double A_;
};

/// External control field (B_x, B_y, B_z) applied at time t.
struct FieldSample {
    double t = 0.0;
    double bx = 0.0;
    double by = 0.0;
    double bz = 0.0;

    friend bool operator==(const FieldSample&, const FieldSample&) = default;
};

}  // namespace spinflip
