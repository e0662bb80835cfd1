#pragma once

// Quadrature convention used throughout the library:
//
//   X = (a + a^dag) / 2,   Y = (a - a^dag) / (2i),   [X, Y] = i/2
//
// so the vacuum has Var X = Var Y = 1/4.  D(x) = exp(x (a^dag - a)) shifts <X>
// by the real amount x and S(r) = exp((r/2)(a^2 - a^dag^2)) squeezes X:
// Var X = e^{-2r}/4, Var Y = e^{2r}/4.  Photon number obeys n + 1/2 = X^2 + Y^2.

namespace darkport {

inline constexpr double kVacuumVariance = 0.25;

/// Squeezed vacuum S(r)|0> and the constants derived from its squeezing parameter.
class SqueezedVacuumSpec {
public:
    explicit SqueezedVacuumSpec(double r);

    double r() const noexcept { return r_; }

    /// tanh r
    double gamma() const noexcept;
    /// 1/sqrt(1 - e^{-4r}); +inf at r = 0.
    double zeta() const noexcept;
    /// zeta^2 - 1 = 1/(e^{4r} - 1), without cancellation at large r.
    double zeta_sq_minus_one() const noexcept;

    double delta_x0() const noexcept;     // e^{-r}/2
    double delta_y0() const noexcept;     // e^{r}/2
    double var_y0() const noexcept;       // e^{2r}/4
    double delta_n0() const noexcept;     // sinh(2r)/sqrt(2)

    /// Displacement at which the mean-photon-number estimator reaches half the QFI.
    double chi_c() const noexcept;
    /// Quantum Fisher information of x for the pure displaced state: 4 e^{2r}.
    double qfi() const noexcept;

    /// sqrt(gamma) * zeta = 1/(1 + e^{-2r}).  Finite at r = 0 (value 1/2).
    ///
    /// Amplitudes obey c_{n+1} = (2 g x c_n - gamma sqrt(n) c_{n-1}) / sqrt(n+1) and
    /// d/dx c_n = 2 g (sqrt(n) c_{n-1} - x c_n), with c_0 = sqrt(sech r) e^{-g x^2}.
    double displacement_gain() const noexcept;

    /// Mean photon number x^2 + sinh^2 r.
    double mean_photons(double x) const noexcept;
    /// Photon-number variance x^2 e^{-2r} + sinh^2(2r)/2.
    double photon_variance(double x) const noexcept;

private:
    double r_;
};

}  // namespace darkport
