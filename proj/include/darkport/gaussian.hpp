#pragma once

#include <Eigen/Dense>

#include "darkport/squeezing.hpp"

namespace darkport {

/// Bright coherent amplitude alpha in port 2, squeezed vacuum S(r)|0> in port 1,
/// internal phase difference phi.
struct InterferometerConfig {
    double alpha = 100.0;
    double phi = 0.0;
    double r = 1.0;

    /// Throws DomainError unless alpha > 0 and |phi| < pi.
    void validate() const;
};

/// Eigenvalue tolerance for the uncertainty relation cov + (i/4) Omega >= 0.
inline constexpr double kCovariancePsdTolerance = 1e-10;

/// Gaussian state of the two interferometer modes, quadratures ordered (X1, Y1, X2, Y2).
struct TwoModeGaussianState {
    Eigen::Vector4d mean = Eigen::Vector4d::Zero();
    Eigen::Matrix4d cov = Eigen::Matrix4d::Identity() * kVacuumVariance;

    /// S(r)|0> in mode 1 and the real coherent state |alpha> in mode 2.
    static TwoModeGaussianState squeezed_and_coherent(const SqueezedVacuumSpec& spec, double alpha);

    /// Smallest eigenvalue of cov + (i/4) Omega.
    double uncertainty_margin() const;
    /// Throws NonPhysicalStateError if the covariance is asymmetric or violates the
    /// uncertainty relation by more than kCovariancePsdTolerance.
    void validate() const;
};

/// Single-mode Gaussian state, quadratures ordered (X, Y).
struct SingleModeGaussian {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d cov = Eigen::Matrix2d::Identity() * kVacuumVariance;

    /// D(x) S(r)|0>.
    static SingleModeGaussian displaced_squeezed(const SqueezedVacuumSpec& spec, double x);

    double uncertainty_margin() const;
    void validate() const;
};

/// Conjugates mean and covariance by the beam-splitter rotation at half angle phi/2,
/// applied blockwise to (X1, X2) and (Y1, Y2).
TwoModeGaussianState interferometer_transform(const TwoModeGaussianState& state, double phi);

/// Marginal of the dark port (mode 1).
SingleModeGaussian reduce_dark_port(const TwoModeGaussianState& state);

/// Uhlmann fidelity of two single-mode Gaussian states; symmetric, 1 for identical states.
double gaussian_fidelity(const SingleModeGaussian& a, const SingleModeGaussian& b);

/// Fidelity between the exact dark-port marginal of `state` and the ideal D(x)S(r)|0>.
double dark_port_fidelity(const TwoModeGaussianState& state, const SqueezedVacuumSpec& spec, double x);

/// Small-phase map x = alpha phi / 2.
double phase_to_displacement(const InterferometerConfig& cfg);
/// Exact dark-port displacement alpha sin(phi/2).
double exact_dark_port_displacement(const InterferometerConfig& cfg);

/// 1/dphi^2 = (alpha^2/4) * 1/dx^2.
double displacement_sensitivity_to_phase(double inv_var_x, double alpha);

/// phi_c = (e^{3r} - e^{-r}) / (sqrt(2) alpha) = 2 chi_c / alpha.
double critical_phase(const SqueezedVacuumSpec& spec, double alpha);

}  // namespace darkport
