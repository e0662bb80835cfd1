#pragma once

#include <cstddef>
#include <vector>

#include "darkport/fock.hpp"
#include "darkport/squeezing.hpp"

namespace darkport {

/// Displacements below this are treated as x = 0, where S ~ 1/x is singular.
inline constexpr double kMinSemiclassicalDisplacement = 1e-6;

enum class ForbiddenRegion { kThrow, kZero };

/// Coarse-grained envelope rho(n, x) = exp(-u / (2 dY^2)) / sqrt(2 pi u dY^2),
/// u = n + 1/2 - x^2, dY^2 = e^{2r}/4.  Integrates to 1 over n.
double envelope(double n, double x, const SqueezedVacuumSpec& spec,
                ForbiddenRegion forbidden = ForbiddenRegion::kThrow);

/// y = sqrt(n + 1/2 - (zeta x)^2); throws DomainError in the forbidden region.
double y_of_n(double n, double x, const SqueezedVacuumSpec& spec);

/// S(y, zeta x) = 2 y^3 / (3 zeta x).
double action(double y, double x, const SqueezedVacuumSpec& spec);

/// 2 rho(n, x) cos^2(S(y(n), zeta x) - pi/4); 0 when n + 1/2 <= (zeta x)^2.
double wkb_probability(double n, double x, const SqueezedVacuumSpec& spec);

struct WkbApprox {
    double x = 0.0;
    std::vector<double> envelope;     ///< 2 rho, zero in the forbidden region
    std::vector<double> action;       ///< S(n), zero in the forbidden region
    std::vector<double> approx_probs;
};

WkbApprox wkb_distribution(double x, const SqueezedVacuumSpec& spec, std::size_t cutoff);

/// floor(S/pi + 1/4).
int minima_count(double y, double x, const SqueezedVacuumSpec& spec);

/// y_min^(k) = ((4k - 1) 3 pi zeta x / 8)^(1/3).
double y_of_minimum(int k, double x, const SqueezedVacuumSpec& spec);

/// n_min^(k) = (zeta x)^2 + (y_min^(k))^2 - 1/2.
double n_of_minimum(int k, double x, const SqueezedVacuumSpec& spec);

struct MinimaGeometry {
    double x = 0.0;
    std::vector<double> y_min;
    std::vector<double> n_min;
    int k_count = 0;  ///< minima with y_min <= y_max
};

MinimaGeometry minima_geometry(double x, const SqueezedVacuumSpec& spec, double y_max);

/// chi_dY = 8 dY^3 / (9 pi zeta); first minimum sits at y = dY.  Requires r > 0.
double chi_deltaY(const SqueezedVacuumSpec& spec);

/// Normal density in n with the exact mean and variance of p_n(x).
double gaussian_approx(double n, double x, const SqueezedVacuumSpec& spec);

struct PhaseGap {
    double delta_tau = 0.0;
    double delta_nu = 0.0;
};

/// dtau = 2 arccos(x / sqrt(n + 1/2)), dnu = 2 pi / dtau.
PhaseGap phase_gap(double n, double x);

/// S/pi + 1/4 as a function of u = x/chi_dY and v = y/dY: 3 v^3 / (4 u) + 1/4.
double minima_contour_value(double u, double v);

/// Exact probability of photon numbers n < n_min^(1)(x).
double mass_below_first_minimum(double x, const SqueezedVacuumSpec& spec);

/// Gaussian-y estimate of the same mass: P(|y| < y_min^(1)) = erf(y_min / (sqrt 2 dY)).
double mass_below_first_minimum_y_model(double x, const SqueezedVacuumSpec& spec);

/// First local minimum of p_n after its global maximum; returns cutoff if there is none.
std::size_t first_exact_minimum(const PhotonDistribution& dist);

/// (n_min^(1) - nbar) / dn at x = chi_c using nbar = chi_c^2 + dY^2 - 1/2 and dn = 2 dY^2.
double first_minimum_offset(const SqueezedVacuumSpec& spec);

}  // namespace darkport
