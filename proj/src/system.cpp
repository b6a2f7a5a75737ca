#include "spinflip/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinflip {

SystemParams::SystemParams(double epsilon, double A) : epsilon_(epsilon), A_(A) {
    if (!std::isfinite(epsilon) || epsilon < 0.0) {
        throw std::invalid_argument("epsilon must be finite and >= 0, got " + std::to_string(epsilon));
    }
    if (!std::isfinite(A) || !(A > 0.0)) {
        throw std::invalid_argument("A must be finite and > 0, got " + std::to_string(A));
    }
}

double SystemParams::rate() const noexcept { return std::sqrt(epsilon_ * epsilon_ + A_); }

}  // namespace spinflip
