#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "darkport/fock.hpp"
#include "darkport/squeezing.hpp"

namespace darkport {

/// Photon loss with probability epsilon per photon before an ideal number-resolving detector.
class LossChannel {
public:
    explicit LossChannel(double epsilon = 0.0);

    double epsilon() const noexcept { return epsilon_; }
    double efficiency() const noexcept { return 1.0 - epsilon_; }
    /// x_eff / x = sqrt(1 - epsilon).
    double x_eff_scale() const noexcept;

    /// Thermal coefficient (s - 1)/(s + 1), s = sqrt(1 + 4 eps (1 - eps) sinh^2 r).
    double lambda(const SqueezedVacuumSpec& spec) const noexcept;
    /// r_eff = (1/4) ln(((1 - eps) e^{2r} + eps) / ((1 - eps) e^{-2r} + eps)).
    double r_eff(const SqueezedVacuumSpec& spec) const noexcept;
    /// Dip sharpness sinh^2(r) e^{-2 r_eff}.
    double beta(const SqueezedVacuumSpec& spec) const noexcept;
    SqueezedVacuumSpec effective_spec(const SqueezedVacuumSpec& spec) const;

private:
    double epsilon_;
};

/// Binomial loss applied to an arbitrary distribution over n = 0..size-1:
/// P_n = (1 - eps)^n sum_k C(n+k, k) eps^k p_{n+k}.  Trace preserving on the truncated support.
std::vector<double> apply_loss(const std::vector<double>& probs, double epsilon);

/// Lossy detector statistics P_n(eps, x).  The pure distribution is truncated by the
/// policy and every retained p_m is convolved, so the deficit of P equals that of p.
PhotonDistribution lossy_distribution(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                                      double tail_tol = kDefaultTailTolerance);
PhotonDistribution lossy_distribution(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                                      const CutoffPolicy& policy);

/// P_n with its first and second x-derivatives (amp_derivative is left empty).
DistributionJet lossy_jet(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                          const CutoffPolicy& policy = {});

std::vector<double> lossy_distribution_derivative(double x, const SqueezedVacuumSpec& spec,
                                                  const LossChannel& channel,
                                                  double tail_tol = kDefaultTailTolerance);

struct ThermalDecomposition {
    double lambda = 0.0;
    double r_eff = 0.0;
    std::vector<double> weights;  ///< (1 - lambda) lambda^m while >= 1e-14
};

/// Lossy squeezed vacuum as sum_m (1 - lambda) lambda^m S(r_eff)|m><m|S^dag(r_eff).
ThermalDecomposition thermal_decomposition(const SqueezedVacuumSpec& spec, const LossChannel& channel);

inline constexpr double kMixtureMaxLoss = 0.1;
inline constexpr double kMixtureWarnLoss = 0.02;

/// First-order mixture (1 - eps sinh^2 r) |<n|Phi_0(x_eff)>|^2 + eps sinh^2 r |<n|Phi_1(x_eff)>|^2
/// at squeezing r_eff.  Throws DomainError for eps > 0.1 and warns on std::clog above 0.02.
PhotonDistribution mixture_approx_distribution(double x, const SqueezedVacuumSpec& spec,
                                               const LossChannel& channel,
                                               double tail_tol = kDefaultTailTolerance);

/// Output density matrix of the Kraus loss channel acting on the brute-force pure state
/// D(x)S(r)|0> in a dim-dimensional Fock space.
Eigen::MatrixXd density_operator_oracle(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                                        std::size_t dim);

/// sum_k K_k rho K_k^dag with K_k = sum_n sqrt(C(n,k) eps^k (1-eps)^{n-k}) |n-k><n|.
Eigen::MatrixXd apply_loss_kraus(const Eigen::MatrixXd& rho, double epsilon);

/// D(x) rho D(x)^dag with the truncated displacement generator.
Eigen::MatrixXd displace_density(const Eigen::MatrixXd& rho, double x);

/// (1/2) sum |eig(a - b)| for symmetric a, b.
double trace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// (1/2) sum_n |p_n - q_n| over the common support, plus the unmatched tail.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace darkport
