#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "darkport/squeezing.hpp"

namespace darkport {

inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr std::size_t kDefaultHardCutoff = 1'000'000;

/// How photon-number cutoffs are chosen: start at ceil(nbar + 12 dn + 20) (or
/// `min_cutoff` if larger) and double until the norm deficit is <= tail_tol.
struct CutoffPolicy {
    double tail_tol = kDefaultTailTolerance;
    std::size_t hard_limit = kDefaultHardCutoff;
    std::size_t min_cutoff = 0;
};

/// Truncated photon-number distribution p_n, n = 0..cutoff.
struct PhotonDistribution {
    std::vector<double> probs;
    std::size_t cutoff = 0;
    double norm_deficit = 0.0;  ///< 1 - sum p_n, clamped at 0
};

/// Amplitudes <n|psi> carried as sign and ln|.|; zero amplitudes have ln|.| = -inf.
struct AmplitudeSet {
    std::vector<double> log_magnitude;
    std::vector<int> sign;
    std::size_t cutoff = 0;
    double norm_deficit = 0.0;

    double value(std::size_t n) const;
    std::vector<double> linear() const;
};

/// Distribution together with its first two x-derivatives at one displacement.
struct DistributionJet {
    PhotonDistribution dist;
    std::vector<double> first;   ///< d p_n / dx
    std::vector<double> second;  ///< d^2 p_n / dx^2
    std::vector<double> amp_derivative;  ///< d c_n / dx (amplitudes are real)
};

struct PhotonMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Positive zero of p_n(x): k = 1 is the zero at largest displacement.
struct ZeroPoint {
    int n = 0;
    int k = 0;
    double x = 0.0;
};

struct ZeroSet {
    std::vector<ZeroPoint> positive;  ///< descending in x
    bool origin = false;              ///< p_n(0) = 0
};

/// <n|D(x)S(r)|0> for n = 0..cutoff, via the rescaled Hermite three-term recurrence.
/// r = 0 is the continuous coherent-state limit (Poisson with mean x^2).
AmplitudeSet amplitudes(double x, const SqueezedVacuumSpec& spec, std::size_t cutoff);

/// Single amplitude <n|D(x)S(r)|0>.
double amplitude(std::size_t n, double x, const SqueezedVacuumSpec& spec);

/// Smallest cutoff of the doubling sequence meeting the policy's tail tolerance.
/// Throws CutoffError if the hard limit is reached first.
std::size_t auto_cutoff(double x, const SqueezedVacuumSpec& spec, const CutoffPolicy& policy = {});

PhotonDistribution distribution(double x, const SqueezedVacuumSpec& spec,
                                double tail_tol = kDefaultTailTolerance);
PhotonDistribution distribution(double x, const SqueezedVacuumSpec& spec, const CutoffPolicy& policy);

/// Probabilities and analytic x-derivatives at a fixed cutoff.
DistributionJet distribution_jet(double x, const SqueezedVacuumSpec& spec, std::size_t cutoff);
DistributionJet distribution_jet(double x, const SqueezedVacuumSpec& spec, const CutoffPolicy& policy = {});

/// d p_n / dx on the same cutoff that distribution() would choose.
std::vector<double> distribution_derivative(double x, const SqueezedVacuumSpec& spec,
                                            double tail_tol = kDefaultTailTolerance);

PhotonMoments moments(const PhotonDistribution& dist);

/// Roots of the probabilists' Hermite polynomial He_n: the floor(n/2) positive ones,
/// descending.  Jacobi-matrix eigenvalues followed by a Newton polish.
std::vector<double> hermite_positive_roots(int n);

/// Zeros x_{n,k} = z_{n,k} / (2 zeta) of p_n.  At r = 0 every zero collapses onto the origin.
ZeroSet zeros(int n, const SqueezedVacuumSpec& spec);

/// <n|D(x)S(r)|m> for n = 0..cutoff; m must be 0 or 1 (throws DomainError otherwise).
std::vector<double> displaced_squeezed_number_amplitudes(int m, double x, const SqueezedVacuumSpec& spec,
                                                         std::size_t cutoff);
double displaced_squeezed_number_amplitude(std::size_t n, int m, double x, const SqueezedVacuumSpec& spec);

/// Reference state D(x)S(r)|m> from matrix exponentials of the truncated generators
/// on a dim-dimensional Fock space.  Throws CutoffError if more than 1e-12 of the norm
/// sits in the top quarter of the space.
Eigen::VectorXd brute_force_state(int m, double x, const SqueezedVacuumSpec& spec, std::size_t dim);

}  // namespace darkport
