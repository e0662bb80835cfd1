#include "darkport/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "darkport/error.hpp"

namespace darkport {

namespace {

void require_displacement(double x) {
    if (!(std::abs(x) >= kMinSemiclassicalDisplacement)) {
        throw DomainError("semiclassical phase is singular at x = 0 (got x = " + std::to_string(x) + ")");
    }
}

}  // namespace

double envelope(double n, double x, const SqueezedVacuumSpec& spec, ForbiddenRegion forbidden) {
    const double u = n + 0.5 - x * x;
    if (!(u > 0.0)) {
        if (forbidden == ForbiddenRegion::kZero) return 0.0;
        throw DomainError("n = " + std::to_string(n) + " lies in the classically forbidden region");
    }
    const double var = spec.var_y0();
    return std::exp(-u / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * u * var);
}

double y_of_n(double n, double x, const SqueezedVacuumSpec& spec) {
    const double zx = spec.zeta() * x;
    const double u = n + 0.5 - zx * zx;
    if (!(u >= 0.0)) throw DomainError("n = " + std::to_string(n) + " lies in the classically forbidden region");
    return std::sqrt(u);
}

double action(double y, double x, const SqueezedVacuumSpec& spec) {
    require_displacement(x);
    if (y < 0.0) throw DomainError("y must be >= 0");
    return 2.0 * y * y * y / (3.0 * spec.zeta() * x);
}

double wkb_probability(double n, double x, const SqueezedVacuumSpec& spec) {
    require_displacement(x);
    const double zx = spec.zeta() * x;
    if (!(n + 0.5 > zx * zx)) return 0.0;
    const double c = std::cos(action(y_of_n(n, x, spec), x, spec) - 0.25 * std::numbers::pi);
    return 2.0 * envelope(n, x, spec) * c * c;
}

WkbApprox wkb_distribution(double x, const SqueezedVacuumSpec& spec, std::size_t cutoff) {
    require_displacement(x);
    WkbApprox out;
    out.x = x;
    out.envelope.assign(cutoff + 1, 0.0);
    out.action.assign(cutoff + 1, 0.0);
    out.approx_probs.assign(cutoff + 1, 0.0);
    const double zx = spec.zeta() * x;
    for (std::size_t n = 0; n <= cutoff; ++n) {
        const double nn = static_cast<double>(n);
        if (!(nn + 0.5 > zx * zx)) continue;
        out.envelope[n] = 2.0 * envelope(nn, x, spec);
        out.action[n] = action(y_of_n(nn, x, spec), x, spec);
        const double c = std::cos(out.action[n] - 0.25 * std::numbers::pi);
        out.approx_probs[n] = out.envelope[n] * c * c;
    }
    return out;
}

int minima_count(double y, double x, const SqueezedVacuumSpec& spec) {
    // The small slack keeps y = y_min^(k) on the k side despite cube-root rounding.
    const double v = action(y, x, spec) / std::numbers::pi + 0.25;
    return static_cast<int>(std::floor(v * (1.0 + 1e-12)));
}

double y_of_minimum(int k, double x, const SqueezedVacuumSpec& spec) {
    require_displacement(x);
    if (k < 1) throw DomainError("minimum index k must be >= 1");
    return std::cbrt((4.0 * k - 1.0) * 3.0 * std::numbers::pi * spec.zeta() * x / 8.0);
}

double n_of_minimum(int k, double x, const SqueezedVacuumSpec& spec) {
    const double zx = spec.zeta() * x;
    const double y = y_of_minimum(k, x, spec);
    return zx * zx + y * y - 0.5;
}

MinimaGeometry minima_geometry(double x, const SqueezedVacuumSpec& spec, double y_max) {
    MinimaGeometry g;
    g.x = x;
    g.k_count = minima_count(y_max, x, spec);
    for (int k = 1; k <= g.k_count; ++k) {
        g.y_min.push_back(y_of_minimum(k, x, spec));
        g.n_min.push_back(n_of_minimum(k, x, spec));
    }
    return g;
}

double chi_deltaY(const SqueezedVacuumSpec& spec) {
    if (!(spec.r() > 0.0)) throw DomainError("chi_dY requires r > 0");
    const double dy = spec.delta_y0();
    return 8.0 * dy * dy * dy / (9.0 * std::numbers::pi * spec.zeta());
}

double gaussian_approx(double n, double x, const SqueezedVacuumSpec& spec) {
    const double mean = spec.mean_photons(x);
    const double var = spec.photon_variance(x);
    const double d = n - mean;
    return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

PhaseGap phase_gap(double n, double x) {
    const double radius_sq = n + 0.5;
    if (!(radius_sq > x * x)) throw DomainError("phase gap undefined in the classically forbidden region");
    PhaseGap g;
    g.delta_tau = 2.0 * std::acos(std::abs(x) / std::sqrt(radius_sq));
    g.delta_nu = 2.0 * std::numbers::pi / g.delta_tau;
    return g;
}

double minima_contour_value(double u, double v) {
    if (!(u > 0.0)) throw DomainError("contour coordinate u must be > 0");
    return 0.75 * v * v * v / u + 0.25;
}

double mass_below_first_minimum(double x, const SqueezedVacuumSpec& spec) {
    const double n_min = n_of_minimum(1, x, spec);
    const PhotonDistribution dist = distribution(x, spec);
    long double mass = 0.0L;
    for (std::size_t n = 0; n < dist.probs.size() && static_cast<double>(n) < n_min; ++n) mass += dist.probs[n];
    return static_cast<double>(mass);
}

double mass_below_first_minimum_y_model(double x, const SqueezedVacuumSpec& spec) {
    return std::erf(y_of_minimum(1, x, spec) / (std::numbers::sqrt2 * spec.delta_y0()));
}

std::size_t first_exact_minimum(const PhotonDistribution& dist) {
    const auto& p = dist.probs;
    if (p.size() < 3) return dist.cutoff;
    const std::size_t peak = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    for (std::size_t n = peak + 1; n + 1 < p.size(); ++n) {
        if (p[n] < p[n - 1] && p[n] <= p[n + 1]) return n;
    }
    return dist.cutoff;
}

double first_minimum_offset(const SqueezedVacuumSpec& spec) {
    // (zeta^2 - 1) chi_c^2 is evaluated directly to avoid cancellation at large r.
    const double chi = spec.chi_c();
    const double var_y = spec.var_y0();
    const double y1 = y_of_minimum(1, chi, spec);
    return (spec.zeta_sq_minus_one() * chi * chi + y1 * y1 - var_y) / (2.0 * var_y);
}

}  // namespace darkport
