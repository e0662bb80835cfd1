#pragma once

#include <cstddef>
#include <vector>

#include "darkport/fock.hpp"
#include "darkport/loss.hpp"
#include "darkport/squeezing.hpp"

namespace darkport {

/// Probabilities below this count as exact zeros of a pure state.
inline constexpr double kProbabilityFloor = 1e-30;

enum class Execution { kSerial, kParallel };

/// Per-outcome terms I_n = (dP_n)^2 / P_n.  Below p_floor the term is 2 d^2 p_n when
/// `pure` (the limit at an exact zero) and 0 otherwise.  Throws DomainError on P_n < 0.
std::vector<double> fisher_terms(const DistributionJet& jet, bool pure, double p_floor = kProbabilityFloor);

/// Sum of fisher_terms.
double classical_fisher(const DistributionJet& jet, bool pure, double p_floor = kProbabilityFloor);

/// Exact CFI of number-resolving detection with loss, from analytic derivatives.
double exact_fisher(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                    const CutoffPolicy& policy = {});

/// H_F(eps) = 4 sqrt(((1-eps) e^{2r} + eps) / ((1-eps) e^{-2r} + eps)) = 4 e^{2 r_eff}.
double quantum_fisher(const SqueezedVacuumSpec& spec, const LossChannel& channel);

/// (d nbar/dx)^2 / var(n) from the moments of the lossy distribution.
double avg_photon_sensitivity(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                              const CutoffPolicy& policy = {});

/// Closed form H_F x^2 / (x^2 + chi_c^2) of the lossless mean-photon sensitivity.
double avg_photon_sensitivity_lossless(double x, const SqueezedVacuumSpec& spec);

/// Zeros of p_n for n = 1..n_max at one squeezing, computed once and shared read-only.
class ZeroTable {
public:
    ZeroTable(const SqueezedVacuumSpec& spec, int n_max);

    int n_max() const noexcept { return static_cast<int>(sets_.size()) - 1; }
    double r() const noexcept { return r_; }
    /// Throws DomainError if n is outside 0..n_max.
    const ZeroSet& at(int n) const;

private:
    double r_;
    std::vector<ZeroSet> sets_;
};

/// delta_n with 1 - delta_n = prod (t^2 / (t^2 + eps beta)), t = |x_eff| - x0, over the positive
/// zeros of `zeros` and the origin when p_n(0) = 0.
double reduction_factor(double x_eff, double eps_beta, const ZeroSet& zeros);

/// Same, with the zeros of p_n at r_eff.  Requires eps > 0.
double reduction_factor(int n, double x_eff, const SqueezedVacuumSpec& spec, const LossChannel& channel);

struct ApproxFisherBreakdown {
    double value = 0.0;         ///< (1 - eps) (H_F(eps) - Delta_Q)
    double qfi = 0.0;           ///< H_F(eps)
    double delta_q = 0.0;       ///< sum_n I_n delta_n
    std::vector<double> pure_terms;  ///< I_n of the r_eff, x_eff pure state
    std::vector<double> delta;       ///< delta_n
};

/// Loss-reduction model of the CFI.  `table` must hold zeros at r_eff up to the cutoff;
/// it is grown internally when null.
ApproxFisherBreakdown approx_fisher_breakdown(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                                              const ZeroTable* table = nullptr);
double approx_fisher(double x, const SqueezedVacuumSpec& spec, const LossChannel& channel,
                     const ZeroTable* table = nullptr);

struct DipAnnotation {
    int n = 0;
    int k = 0;
    double x_dip = 0.0;  ///< x_{n,k}(r_eff) / sqrt(1 - eps)
    double depth = 0.0;  ///< I_n of the r_eff pure state at x_eff = x_{n,k}
};

/// Every positive zero of p_n (n <= n_max) at r_eff, sorted by x_dip.
std::vector<DipAnnotation> dip_annotations(const SqueezedVacuumSpec& spec, const LossChannel& channel, int n_max);

/// Displacement where the exact lossy P_n has its local minimum near the (n, k) dip
/// (root of dP_n/dx), and the single-outcome Fisher term there.
struct OutcomeDip {
    double x = 0.0;
    double term = 0.0;
};
OutcomeDip outcome_dip(int n, int k, const SqueezedVacuumSpec& spec, const LossChannel& channel);

/// Half-width in x of the (n, k) dip of the exact CFI: mean distance from the dip centre
/// to where the exact term I_n recovers half of (1 - eps) times the r_eff pure-state term.
/// Elsewhere the CFI is left unchanged to first order, so this is the dip's half-width.
double dip_half_width(int n, int k, const SqueezedVacuumSpec& spec, const LossChannel& channel);

/// Sharpness fitted from dip_half_width: beta = (1 - eps) w^2 / eps.
double fitted_sharpness(int n, int k, const SqueezedVacuumSpec& spec, const LossChannel& channel);

enum FisherMode : unsigned {
    kModeExact = 1u,
    kModeApprox = 2u,
    kModeAvg = 4u,
    kModeAll = 7u,
};

/// Fisher information sampled on an x-grid.  Columns not requested by the mode are NaN.
struct FisherCurve {
    double r = 0.0;
    double epsilon = 0.0;
    std::vector<double> x_grid;
    std::vector<double> cfi_exact;
    std::vector<double> ifisher_approx;
    std::vector<double> i_avg;
    double qfi = 0.0;
    std::vector<DipAnnotation> dips;
};

std::vector<double> linear_grid(double lo, double hi, std::size_t points);

FisherCurve fisher_curve(const std::vector<double>& x_grid, const SqueezedVacuumSpec& spec,
                         const LossChannel& channel, unsigned mode = kModeAll,
                         Execution exec = Execution::kParallel);

}  // namespace darkport
