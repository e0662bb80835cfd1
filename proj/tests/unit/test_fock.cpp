#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "darkport/error.hpp"
#include "darkport/fock.hpp"
#include "oracles.hpp"

using namespace darkport;

namespace {

struct Point {
    double r;
    double x;
};

}  // namespace

class AmplitudeOracle : public ::testing::TestWithParam<Point> {};

TEST_P(AmplitudeOracle, MatchesWavefunctionOverlap) {
    const auto [r, x] = GetParam();
    const SqueezedVacuumSpec spec(r);
    const int n_max = 40;
    const auto ref = oracle::overlap_amplitudes(0, x, r, n_max);
    const auto amp = amplitudes(x, spec, n_max).linear();
    for (int n = 0; n <= n_max; ++n) EXPECT_NEAR(amp[n], ref[n], 1e-10) << "n=" << n;
}

TEST_P(AmplitudeOracle, SinglePhotonInputMatchesOverlap) {
    const auto [r, x] = GetParam();
    const SqueezedVacuumSpec spec(r);
    const int n_max = 40;
    const auto ref = oracle::overlap_amplitudes(1, x, r, n_max);
    const auto amp = displaced_squeezed_number_amplitudes(1, x, spec, n_max);
    for (int n = 0; n <= n_max; ++n) EXPECT_NEAR(amp[n], ref[n], 1e-10) << "n=" << n;
}

INSTANTIATE_TEST_SUITE_P(Grid, AmplitudeOracle,
                         ::testing::Values(Point{0.0, 1.3}, Point{0.21, 0.4}, Point{0.5, 1.0}, Point{0.8, 1.14},
                                           Point{1.0, 0.0}, Point{1.0, 1.65}, Point{1.0, 2.5}, Point{1.3, 0.7}));

TEST(Fock, BruteForceStateAgreesWithRecurrence) {
    const SqueezedVacuumSpec spec(0.8);
    const auto v = brute_force_state(0, 1.62, spec, 160);
    const auto amp = amplitudes(1.62, spec, 60).linear();
    for (int n = 0; n <= 60; ++n) EXPECT_NEAR(v[n], amp[n], 1e-11) << "n=" << n;
}

TEST(Fock, CoherentLimitIsPoisson) {
    const SqueezedVacuumSpec spec(0.0);
    const double x = 1.7;
    const auto d = distribution(x, spec);
    for (std::size_t n = 0; n < 30; ++n) {
        const double poisson = std::exp(-x * x + 2.0 * n * std::log(x) - std::lgamma(n + 1.0));
        EXPECT_NEAR(d.probs[n], poisson, 1e-14);
    }
}

TEST(Fock, SqueezedVacuumHasEvenSupport) {
    const SqueezedVacuumSpec spec(1.0);
    const auto d = distribution(0.0, spec);
    for (std::size_t n = 1; n < d.probs.size(); n += 2) EXPECT_EQ(d.probs[n], 0.0);
    // p_{2k} = tanh^{2k} r (2k)! / (4^k k!^2 cosh r)
    for (int k = 0; k < 10; ++k) {
        const double ref = std::exp(2 * k * std::log(std::tanh(1.0)) + std::lgamma(2 * k + 1.0) -
                                    2 * k * std::log(2.0) - 2 * std::lgamma(k + 1.0)) /
                           std::cosh(1.0);
        EXPECT_NEAR(d.probs[2 * k], ref, 1e-14);
    }
}

TEST(Fock, NormalizationAndMomentsMatchClosedForm) {
    for (double r : {0.21, 0.8, 1.5}) {
        const SqueezedVacuumSpec spec(r);
        for (double x : {0.0, 0.9, 3.0, 12.0}) {
            const auto d = distribution(x, spec);
            EXPECT_LE(d.norm_deficit, 1e-12);
            const auto m = moments(d);
            EXPECT_NEAR(m.mean, x * x + std::sinh(r) * std::sinh(r), 1e-9 * (1 + m.mean));
            const double var = x * x * std::exp(-2 * r) + 0.5 * std::sinh(2 * r) * std::sinh(2 * r);
            EXPECT_NEAR(m.variance, var, 1e-8 * (1 + var));
        }
    }
}

TEST(Fock, LargeDisplacementStaysFinite) {
    const SqueezedVacuumSpec spec(1.5);
    const auto d = distribution(40.0, spec);
    EXPECT_LE(d.norm_deficit, 1e-12);
    for (double p : d.probs) ASSERT_TRUE(std::isfinite(p));
    EXPECT_NEAR(moments(d).mean, 1600.0 + std::sinh(1.5) * std::sinh(1.5), 1e-6);
}

TEST(Fock, JetMatchesFiniteDifferences) {
    const SqueezedVacuumSpec spec(1.0);
    const double x = 1.37;
    const double h = 1e-4;
    const std::size_t cutoff = 80;
    const auto jet = distribution_jet(x, spec, cutoff);
    const auto up = distribution_jet(x + h, spec, cutoff).dist.probs;
    const auto dn = distribution_jet(x - h, spec, cutoff).dist.probs;
    for (std::size_t n = 0; n <= 30; ++n) {
        const double d1 = (up[n] - dn[n]) / (2 * h);
        const double d2 = (up[n] - 2 * jet.dist.probs[n] + dn[n]) / (h * h);
        EXPECT_NEAR(jet.first[n], d1, 1e-7) << "n=" << n;
        EXPECT_NEAR(jet.second[n], d2, 1e-5) << "n=" << n;
    }
}

TEST(Fock, HermiteRootsAreKnownValues) {
    // He_2 = x^2 - 1, He_3 = x^3 - 3x, He_4 = x^4 - 6x^2 + 3.
    EXPECT_NEAR(hermite_positive_roots(2).at(0), 1.0, 1e-15);
    EXPECT_NEAR(hermite_positive_roots(3).at(0), std::sqrt(3.0), 1e-14);
    const auto r4 = hermite_positive_roots(4);
    ASSERT_EQ(r4.size(), 2u);
    EXPECT_NEAR(r4[0], std::sqrt(3.0 + std::sqrt(6.0)), 1e-14);
    EXPECT_NEAR(r4[1], std::sqrt(3.0 - std::sqrt(6.0)), 1e-14);
    EXPECT_TRUE(hermite_positive_roots(1).empty());
}

TEST(Fock, ZerosAreZerosOfTheDistribution) {
    for (double r : {0.5, 0.8, 1.0}) {
        const SqueezedVacuumSpec spec(r);
        for (int n = 1; n <= 12; ++n) {
            const ZeroSet zs = zeros(n, spec);
            EXPECT_EQ(zs.origin, n % 2 == 1);
            EXPECT_EQ(zs.positive.size(), std::size_t(n / 2));
            for (const auto& z : zs.positive) {
                EXPECT_LT(std::abs(amplitude(n, z.x, spec)), 1e-13) << "n=" << n << " k=" << z.k;
            }
        }
    }
}

TEST(Fock, ZerosCollapseAtZeroSqueezing) {
    const SqueezedVacuumSpec spec(0.0);
    for (int n = 1; n <= 6; ++n) {
        const ZeroSet zs = zeros(n, spec);
        EXPECT_TRUE(zs.origin);
        EXPECT_TRUE(zs.positive.empty());
    }
}

TEST(Fock, CutoffErrorOnTinyHardLimit) {
    const SqueezedVacuumSpec spec(1.0);
    CutoffPolicy policy;
    policy.hard_limit = 8;
    EXPECT_THROW(distribution(3.0, spec, policy), CutoffError);
}

TEST(Fock, RejectsUnsupportedInputNumber) {
    const SqueezedVacuumSpec spec(1.0);
    EXPECT_THROW(displaced_squeezed_number_amplitudes(2, 1.0, spec, 10), DomainError);
}
