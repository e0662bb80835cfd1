#include "darkport/squeezing.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "darkport/error.hpp"

namespace darkport {

SqueezedVacuumSpec::SqueezedVacuumSpec(double r) : r_(r) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw DomainError("squeezing parameter must be finite and >= 0, got " + std::to_string(r));
    }
}

double SqueezedVacuumSpec::gamma() const noexcept { return std::tanh(r_); }

double SqueezedVacuumSpec::zeta() const noexcept {
    if (r_ == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(-std::expm1(-4.0 * r_));
}

double SqueezedVacuumSpec::zeta_sq_minus_one() const noexcept {
    if (r_ == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::expm1(4.0 * r_);
}

double SqueezedVacuumSpec::delta_x0() const noexcept { return 0.5 * std::exp(-r_); }
double SqueezedVacuumSpec::delta_y0() const noexcept { return 0.5 * std::exp(r_); }
double SqueezedVacuumSpec::var_y0() const noexcept { return 0.25 * std::exp(2.0 * r_); }
double SqueezedVacuumSpec::delta_n0() const noexcept { return std::sinh(2.0 * r_) / std::sqrt(2.0); }

double SqueezedVacuumSpec::chi_c() const noexcept {
    return (std::exp(3.0 * r_) - std::exp(-r_)) / (2.0 * std::sqrt(2.0));
}

double SqueezedVacuumSpec::qfi() const noexcept { return 4.0 * std::exp(2.0 * r_); }

double SqueezedVacuumSpec::displacement_gain() const noexcept {
    return 1.0 / (1.0 + std::exp(-2.0 * r_));
}

double SqueezedVacuumSpec::mean_photons(double x) const noexcept {
    const double s = std::sinh(r_);
    return x * x + s * s;
}

double SqueezedVacuumSpec::photon_variance(double x) const noexcept {
    const double s2 = std::sinh(2.0 * r_);
    return x * x * std::exp(-2.0 * r_) + 0.5 * s2 * s2;
}

}  // namespace darkport
