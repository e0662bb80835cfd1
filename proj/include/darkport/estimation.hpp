#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "darkport/fisher.hpp"
#include "darkport/fock.hpp"
#include "darkport/loss.hpp"
#include "darkport/squeezing.hpp"

namespace darkport {

/// Closed interval searched by the estimators.
struct SearchInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct ExperimentConfig {
    double r = 1.0;
    double epsilon = 0.002;
    double x_true = 1.0;
    std::size_t n_samples = 2000;
    std::size_t n_trials = 200;
    std::uint64_t seed = 1;
    /// Defaults to [max(0, x - 5/sqrt(N I) - 0.5), x + 5/sqrt(N I) + 0.5] with I the exact CFI.
    std::optional<SearchInterval> search_interval;

    /// Throws DomainError on n_samples = 0, n_trials = 0, or x_true outside the interval.
    void validate() const;
};

struct EstimationReport {
    std::string method;  ///< "mle" or "mean-photon"
    double x_true = 0.0;
    std::size_t n_samples = 0;
    std::size_t n_trials = 0;
    std::uint64_t seed = 0;
    SearchInterval interval;
    std::vector<double> estimates;
    double mse = 0.0;          ///< mean squared error about x_true
    double sensitivity = 0.0;  ///< 1 / (N mse)
    double sensitivity_se = 0.0;  ///< jackknife over trials
    double predicted = 0.0;    ///< exact CFI for "mle", I_avg for "mean-photon"
    double predicted_cfi = 0.0;
};

/// Per-trial generator: std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(trial)).
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);

/// Multinomial counts over n = 0..cutoff by inverse-CDF sampling.
std::vector<std::uint64_t> sample(const PhotonDistribution& dist, std::size_t n_samples, std::mt19937_64& rng);
std::vector<std::uint64_t> sample(const PhotonDistribution& dist, std::size_t n_samples, std::uint64_t seed);

struct MleOptions {
    std::size_t grid_points = 200;
    double tolerance = 1e-6;
};

/// sum_n counts_n ln P_n(eps, x); -inf if an observed n has P_n = 0.
double log_likelihood(const std::vector<std::uint64_t>& counts, double x, const SqueezedVacuumSpec& spec,
                      const LossChannel& channel);

/// Coarse grid then golden-section refinement.  Throws EstimationError when the
/// likelihood is flat or -inf everywhere on the grid.
double mle_estimate(const std::vector<std::uint64_t>& counts, const SqueezedVacuumSpec& spec,
                    const LossChannel& channel, const SearchInterval& interval, const MleOptions& options = {});

SearchInterval default_interval(double x_true, std::size_t n_samples, double cfi);

EstimationReport run_experiment(const ExperimentConfig& cfg, Execution exec = Execution::kParallel);

/// x with (1 - eps)(x^2 + sinh^2 r) = mean; throws EstimationError below the range.
double invert_mean_photons(double mean, const SqueezedVacuumSpec& spec, const LossChannel& channel);

/// Method-of-moments estimator from the sample-mean photon number.  Requires x_true > 0.
EstimationReport run_avg_estimator(const ExperimentConfig& cfg, Execution exec = Execution::kParallel);

/// Jackknife standard error of 1/(N mse) over trials.
double jackknife_sensitivity_se(const std::vector<double>& estimates, double x_true, std::size_t n_samples);

}  // namespace darkport
