#include "darkport/gaussian.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "darkport/error.hpp"

namespace darkport {

namespace {

template <int N>
double symplectic_margin(const Eigen::Matrix<double, N, N>& cov) {
    using Complex = std::complex<double>;
    Eigen::Matrix<Complex, N, N> m = cov.template cast<Complex>();
    for (int k = 0; k < N; k += 2) {
        m(k, k + 1) += Complex(0.0, 0.25);
        m(k + 1, k) -= Complex(0.0, 0.25);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, N, N>> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

template <int N>
void require_physical(const Eigen::Matrix<double, N, N>& cov, double margin) {
    const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
    if (asym > kCovariancePsdTolerance) {
        throw NonPhysicalStateError("covariance matrix is not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");
    }
    if (margin < -kCovariancePsdTolerance) {
        throw NonPhysicalStateError("covariance violates the uncertainty relation (min eigenvalue " +
                                    std::to_string(margin) + ")");
    }
}

}  // namespace

void InterferometerConfig::validate() const {
    if (!(alpha > 0.0)) throw DomainError("coherent amplitude alpha must be > 0");
    if (!(std::abs(phi) < std::numbers::pi)) throw DomainError("phase must satisfy |phi| < pi");
    SqueezedVacuumSpec{r};
}

TwoModeGaussianState TwoModeGaussianState::squeezed_and_coherent(const SqueezedVacuumSpec& spec,
                                                                 double alpha) {
    TwoModeGaussianState s;
    s.mean << 0.0, 0.0, alpha, 0.0;
    s.cov.setZero();
    s.cov(0, 0) = spec.delta_x0() * spec.delta_x0();
    s.cov(1, 1) = spec.var_y0();
    s.cov(2, 2) = kVacuumVariance;
    s.cov(3, 3) = kVacuumVariance;
    return s;
}

double TwoModeGaussianState::uncertainty_margin() const { return symplectic_margin<4>(cov); }

void TwoModeGaussianState::validate() const { require_physical<4>(cov, uncertainty_margin()); }

SingleModeGaussian SingleModeGaussian::displaced_squeezed(const SqueezedVacuumSpec& spec, double x) {
    SingleModeGaussian s;
    s.mean << x, 0.0;
    s.cov << spec.delta_x0() * spec.delta_x0(), 0.0, 0.0, spec.var_y0();
    return s;
}

double SingleModeGaussian::uncertainty_margin() const { return symplectic_margin<2>(cov); }

void SingleModeGaussian::validate() const { require_physical<2>(cov, uncertainty_margin()); }

TwoModeGaussianState interferometer_transform(const TwoModeGaussianState& state, double phi) {
    // Heisenberg picture U a U^dag = M a with M = [[c, -s], [s, c]]; expectation
    // values in the output state therefore transform with M^T.
    const double c = std::cos(0.5 * phi);
    const double s = std::sin(0.5 * phi);
    Eigen::Matrix4d rot = Eigen::Matrix4d::Zero();
    rot(0, 0) = c;  rot(0, 2) = s;
    rot(1, 1) = c;  rot(1, 3) = s;
    rot(2, 0) = -s; rot(2, 2) = c;
    rot(3, 1) = -s; rot(3, 3) = c;

    TwoModeGaussianState out;
    out.mean = rot * state.mean;
    out.cov = rot * state.cov * rot.transpose();
    return out;
}

SingleModeGaussian reduce_dark_port(const TwoModeGaussianState& state) {
    SingleModeGaussian m;
    m.mean = state.mean.head<2>();
    m.cov = state.cov.topLeftCorner<2, 2>();
    return m;
}

double gaussian_fidelity(const SingleModeGaussian& a, const SingleModeGaussian& b) {
    a.validate();
    b.validate();
    // Evaluated in the vacuum-variance-1/2 convention: sigma' = 2 sigma, d' = sqrt(2) d.
    const Eigen::Matrix2d s1 = 2.0 * a.cov;
    const Eigen::Matrix2d s2 = 2.0 * b.cov;
    const Eigen::Vector2d d = std::sqrt(2.0) * (a.mean - b.mean);
    const Eigen::Matrix2d sum = s1 + s2;
    const double big_delta = sum.determinant();
    const double small_delta =
        std::max(0.0, 4.0 * (s1.determinant() - 0.25) * (s2.determinant() - 0.25));
    const double prefactor = 1.0 / (std::sqrt(big_delta + small_delta) - std::sqrt(small_delta));
    const double exponent = -0.5 * d.dot(sum.inverse() * d);
    return std::min(1.0, prefactor * std::exp(exponent));
}

double dark_port_fidelity(const TwoModeGaussianState& state, const SqueezedVacuumSpec& spec, double x) {
    state.validate();
    return gaussian_fidelity(reduce_dark_port(state), SingleModeGaussian::displaced_squeezed(spec, x));
}

double phase_to_displacement(const InterferometerConfig& cfg) { return 0.5 * cfg.alpha * cfg.phi; }

double exact_dark_port_displacement(const InterferometerConfig& cfg) {
    return cfg.alpha * std::sin(0.5 * cfg.phi);
}

double displacement_sensitivity_to_phase(double inv_var_x, double alpha) {
    if (!(inv_var_x >= 0.0)) throw DomainError("inverse variance must be >= 0");
    return 0.25 * alpha * alpha * inv_var_x;
}

double critical_phase(const SqueezedVacuumSpec& spec, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("coherent amplitude alpha must be > 0");
    return (std::exp(3.0 * spec.r()) - std::exp(-spec.r())) / (std::sqrt(2.0) * alpha);
}

}  // namespace darkport
