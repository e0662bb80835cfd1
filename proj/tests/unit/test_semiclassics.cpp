#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "darkport/error.hpp"
#include "darkport/fock.hpp"
#include "darkport/semiclassics.hpp"

using namespace darkport;

TEST(Semiclassics, EnvelopeIntegratesToOne) {
    const SqueezedVacuumSpec spec(0.8);
    const double x = 2.0;
    // Substitute n = x^2 - 1/2 + t^2 to remove the 1/sqrt singularity.
    double sum = 0.0;
    const double h = 1e-4;
    for (double t = h / 2; t < 40.0; t += h) {
        sum += envelope(x * x - 0.5 + t * t, x, spec) * 2.0 * t * h;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
}

TEST(Semiclassics, ForbiddenRegion) {
    const SqueezedVacuumSpec spec(1.0);
    EXPECT_THROW(envelope(0.0, 2.0, spec), DomainError);
    EXPECT_EQ(envelope(0.0, 2.0, spec, ForbiddenRegion::kZero), 0.0);
    EXPECT_EQ(wkb_probability(1.0, 2.0, spec), 0.0);
    EXPECT_THROW(y_of_n(1.0, 2.0, spec), DomainError);
}

TEST(Semiclassics, MinimaPositionsAgreeWithCount) {
    const SqueezedVacuumSpec spec(1.0);
    const double x = 1.4;
    for (int k = 1; k <= 5; ++k) {
        const double y = y_of_minimum(k, x, spec);
        EXPECT_NEAR(action(y, x, spec) / std::numbers::pi + 0.25, double(k), 1e-12);
        EXPECT_EQ(minima_count(y, x, spec), k);
        EXPECT_EQ(minima_count(y * 0.999, x, spec), k - 1);
        EXPECT_NEAR(n_of_minimum(k, x, spec), std::pow(spec.zeta() * x, 2) + y * y - 0.5, 1e-12);
    }
    const auto geom = minima_geometry(x, spec, y_of_minimum(3, x, spec) + 1e-9);
    EXPECT_EQ(geom.k_count, 3);
}

TEST(Semiclassics, ContourValueMatchesAction) {
    const SqueezedVacuumSpec spec(1.0);
    const double chi = chi_deltaY(spec);
    const double dy = spec.delta_y0();
    const double u = 1.7, v = 2.2;
    const double direct = action(v * dy, u * chi, spec) / std::numbers::pi + 0.25;
    EXPECT_NEAR(minima_contour_value(u, v), direct, 1e-12);
    // First minimum at y = dY when x = chi_dY.
    EXPECT_NEAR(y_of_minimum(1, chi, spec), dy, 1e-12);
}

TEST(Semiclassics, GaussianApproxHasExactMoments) {
    const SqueezedVacuumSpec spec(0.8);
    const double x = spec.chi_c();
    double s0 = 0.0, s1 = 0.0;
    for (double n = -60.0; n < 200.0; n += 0.01) {
        const double g = gaussian_approx(n, x, spec) * 0.01;
        s0 += g;
        s1 += n * g;
    }
    EXPECT_NEAR(s0, 1.0, 1e-8);
    EXPECT_NEAR(s1, spec.mean_photons(x), 1e-6);
}

TEST(Semiclassics, WkbTracksExactFarFromTurningPoint) {
    const SqueezedVacuumSpec spec(0.8);
    const double x = 1.14;
    const auto exact = distribution(x, spec);
    const auto wkb = wkb_distribution(x, spec, exact.cutoff);
    for (std::size_t n = 6; n <= 12; ++n) EXPECT_NEAR(wkb.approx_probs[n], exact.probs[n], 0.02) << "n=" << n;
}

TEST(Semiclassics, PhaseGap) {
    const auto g = phase_gap(4.5, 1.0);
    EXPECT_NEAR(g.delta_tau, 2.0 * std::acos(1.0 / std::sqrt(5.0)), 1e-14);
    EXPECT_NEAR(g.delta_nu * g.delta_tau, 2.0 * std::numbers::pi, 1e-12);
}

TEST(Semiclassics, YModelMassAtChiDeltaY) {
    const SqueezedVacuumSpec spec(1.0);
    EXPECT_NEAR(mass_below_first_minimum_y_model(chi_deltaY(spec), spec), std::erf(1.0 / std::sqrt(2.0)), 1e-12);
}

TEST(Semiclassics, FirstExactMinimum) {
    PhotonDistribution d;
    d.probs = {0.1, 0.4, 0.2, 0.05, 0.15, 0.1};
    d.cutoff = 5;
    EXPECT_EQ(first_exact_minimum(d), 3u);
}
