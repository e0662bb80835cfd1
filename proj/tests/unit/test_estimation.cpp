#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "darkport/error.hpp"
#include "darkport/estimation.hpp"

using namespace darkport;

TEST(Estimation, SamplingIsReproducibleAndComplete) {
    const SqueezedVacuumSpec spec(1.0);
    const auto d = lossy_distribution(1.3, spec, LossChannel(0.002));
    const auto a = sample(d, 5000, std::uint64_t{42});
    const auto b = sample(d, 5000, std::uint64_t{42});
    const auto c = sample(d, 5000, std::uint64_t{43});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    EXPECT_EQ(std::accumulate(a.begin(), a.end(), std::uint64_t{0}), 5000u);
}

TEST(Estimation, SampleFrequenciesFollowDistribution) {
    const SqueezedVacuumSpec spec(0.8);
    const auto d = distribution(1.62, spec);
    const std::size_t N = 400000;
    const auto counts = sample(d, N, std::uint64_t{7});
    double chi2 = 0.0;
    int dof = -1;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        const double e = N * d.probs[n];
        if (e < 20) continue;
        chi2 += (counts[n] - e) * (counts[n] - e) / e;
        ++dof;
    }
    // Generous bound: about dof + 6 sqrt(2 dof).
    EXPECT_LT(chi2, dof + 6 * std::sqrt(2.0 * dof));
}

TEST(Estimation, UniformUsesTopBits) {
    auto rng = trial_rng(1, 0);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Estimation, MleRecoversTruthFromExpectedCounts) {
    const SqueezedVacuumSpec spec(1.0);
    const LossChannel ch(0.002);
    const double x = 1.37;
    const auto d = lossy_distribution(x, spec, ch);
    std::vector<std::uint64_t> counts(d.probs.size());
    for (std::size_t n = 0; n < counts.size(); ++n) counts[n] = std::llround(1e7 * d.probs[n]);
    EXPECT_NEAR(mle_estimate(counts, spec, ch, {0.5, 2.5}), x, 1e-4);
}

TEST(Estimation, MleErrors) {
    const SqueezedVacuumSpec spec(1.0);
    const LossChannel ch(0.002);
    EXPECT_THROW(mle_estimate(std::vector<std::uint64_t>(10, 0), spec, ch, {0.0, 1.0}), EstimationError);
    EXPECT_THROW(mle_estimate({1, 2, 3}, spec, ch, {1.0, 1.0}), EstimationError);
}

TEST(Estimation, ConfigValidation) {
    ExperimentConfig cfg;
    cfg.n_samples = 0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg = {};
    cfg.search_interval = SearchInterval{2.0, 3.0};
    EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(Estimation, SerialAndParallelRunsAreIdentical) {
    ExperimentConfig cfg;
    cfg.x_true = 1.5;
    cfg.n_samples = 300;
    cfg.n_trials = 12;
    cfg.seed = 99;
    const auto a = run_experiment(cfg, Execution::kSerial);
    const auto b = run_experiment(cfg, Execution::kParallel);
    EXPECT_EQ(a.estimates, b.estimates);
    EXPECT_EQ(a.sensitivity, b.sensitivity);
}

TEST(Estimation, MeanPhotonInversion) {
    const SqueezedVacuumSpec spec(1.0);
    const LossChannel ch(0.05);
    const double mean = 0.95 * spec.mean_photons(1.7);
    EXPECT_NEAR(invert_mean_photons(mean, spec, ch), 1.7, 1e-12);
    EXPECT_THROW(invert_mean_photons(0.1, spec, ch), EstimationError);
}

TEST(Estimation, JackknifeOfEqualErrorsIsZero) {
    const std::vector<double> e = {1.1, 0.9, 1.1, 0.9};
    EXPECT_NEAR(jackknife_sensitivity_se(e, 1.0, 10), 0.0, 1e-12);
    EXPECT_TRUE(std::isinf(jackknife_sensitivity_se({1.0}, 1.0, 10)));
}

TEST(Estimation, DefaultIntervalIsClippedAtZero) {
    const auto iv = default_interval(0.1, 2000, 30.0);
    EXPECT_EQ(iv.lo, 0.0);
    EXPECT_NEAR(iv.hi, 0.1 + 5.0 / std::sqrt(60000.0) + 0.5, 1e-15);
}
